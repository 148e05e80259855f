#pragma once

#include <map>
#include <string>

#include "sinc/models.hpp"
#include "sinc/rough_heston.hpp"

namespace sinc {

/// Model parameters keyed by model name, then by field name. String-valued
/// fields (e.g. a forward variance CSV path) are kept apart from numbers.
struct ParamsDocument {
  std::map<std::string, std::map<std::string, double>> numbers;
  std::map<std::string, std::map<std::string, std::string>> strings;

  bool has_model(const std::string& model) const;
};

ParamsDocument parse_params_json(const std::string& text);

/// A subset of TOML: [section] headers, `key = value` with numeric or
/// double-quoted string values, and # comments.
ParamsDocument parse_params_toml(const std::string& text);

/// Chooses the parser from the file extension (.json or .toml).
ParamsDocument load_params_file(const std::string& path);

/// Start from the defaults and override the fields present in doc[model].
/// Unknown field names throw DomainError.
GbmParams gbm_params_from(const ParamsDocument& doc, GbmParams base = {});
HestonParams heston_params_from(const ParamsDocument& doc, HestonParams base = {});
CgmyParams cgmy_params_from(const ParamsDocument& doc, CgmyParams base = {});
RoughHestonParams rough_heston_params_from(const ParamsDocument& doc, RoughHestonParams base = {});

}  // namespace sinc
