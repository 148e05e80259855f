#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sinc/characteristic_function.hpp"
#include "sinc/models.hpp"
#include "sinc/params_io.hpp"
#include "sinc/rough_heston.hpp"
#include "sinc/sinc.hpp"

namespace sinc::cli {

/// A model name plus the parameters of every supported model; only the
/// block matching `model` is used.
struct ModelSpec {
  std::string model = "gbm";  // gbm | heston | cgmy | rheston
  GbmParams gbm;
  HestonParams heston;
  CgmyParams cgmy;
  RoughHestonParams rough;
  ForwardVarianceCurve curve = ForwardVarianceCurve::flat(0.0256);
  std::size_t n_steps = kDefaultRiccatiSteps;

  /// Reads the block for `model` (and xi0 / xi_curve / n_steps for rheston).
  void apply(const ParamsDocument& doc);
  CharacteristicFunction make_cf(const MarketSpec& m) const;
};

/// One of the reproducible convergence tables.
struct TableSpec {
  std::string id;
  ModelSpec model;
  MarketSpec market;
  std::vector<double> strikes;
  std::vector<std::size_t> n_f;
  PayoffKind digital_kind = PayoffKind::ConPut;  // second block next to the PV put
  double x_c = 0.0;                              // published truncation half-width
  std::size_t n_f_hi = 1u << 20;                 // benchmark resolution per leg
};

const std::vector<std::string>& table_ids();
TableSpec table_spec(const std::string& id);

}  // namespace sinc::cli
