#include "sinc/params_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sinc {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename Setter>
void apply_fields(const ParamsDocument& doc, const std::string& model, Setter&& set) {
  const auto it = doc.numbers.find(model);
  if (it == doc.numbers.end()) return;
  for (const auto& [key, value] : it->second) {
    if (!set(key, value)) throw DomainError("params: unknown field '" + key + "' for model " + model);
  }
}

}  // namespace

bool ParamsDocument::has_model(const std::string& model) const {
  return numbers.count(model) > 0 || strings.count(model) > 0;
}

ParamsDocument parse_params_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("params: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("params: top level must be an object of models");
  ParamsDocument doc;
  for (const auto& [model, fields] : j.items()) {
    if (!fields.is_object()) throw DomainError("params: model '" + model + "' must be an object");
    doc.numbers[model];
    for (const auto& [key, value] : fields.items()) {
      if (value.is_number()) doc.numbers[model][key] = value.get<double>();
      else if (value.is_string()) doc.strings[model][key] = value.get<std::string>();
      else throw DomainError("params: field '" + key + "' must be a number or string");
    }
  }
  return doc;
}

ParamsDocument parse_params_toml(const std::string& text) {
  ParamsDocument doc;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw DomainError("params: bad section header on line " + std::to_string(line_no));
      section = trim(line.substr(1, line.size() - 2));
      doc.numbers[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || section.empty())
      throw DomainError("params: expected key = value inside a section on line " + std::to_string(line_no));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      doc.strings[section][key] = value.substr(1, value.size() - 2);
      continue;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size())
      throw DomainError("params: value of '" + key + "' is not a number on line " + std::to_string(line_no));
    doc.numbers[section][key] = v;
  }
  return doc;
}

ParamsDocument load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("params: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "json") return parse_params_json(buf.str());
  if (ext == "toml") return parse_params_toml(buf.str());
  throw DomainError("params: unsupported file extension '" + ext + "' (use .json or .toml)");
}

GbmParams gbm_params_from(const ParamsDocument& doc, GbmParams p) {
  apply_fields(doc, "gbm", [&](const std::string& k, double v) {
    if (k == "sigma") p.sigma = v;
    else return false;
    return true;
  });
  p.validate();
  return p;
}

HestonParams heston_params_from(const ParamsDocument& doc, HestonParams p) {
  apply_fields(doc, "heston", [&](const std::string& k, double v) {
    if (k == "lambda") p.lambda = v;
    else if (k == "eta_vol") p.eta_vol = v;
    else if (k == "v_bar") p.v_bar = v;
    else if (k == "v0") p.v0 = v;
    else if (k == "rho") p.rho = v;
    else return false;
    return true;
  });
  p.validate();
  return p;
}

CgmyParams cgmy_params_from(const ParamsDocument& doc, CgmyParams p) {
  apply_fields(doc, "cgmy", [&](const std::string& k, double v) {
    if (k == "C") p.C = v;
    else if (k == "G") p.G = v;
    else if (k == "M") p.M = v;
    else if (k == "Y") p.Y = v;
    else return false;
    return true;
  });
  p.validate();
  return p;
}

RoughHestonParams rough_heston_params_from(const ParamsDocument& doc, RoughHestonParams p) {
  apply_fields(doc, "rough_heston", [&](const std::string& k, double v) {
    if (k == "H") p.H = v;
    else if (k == "nu") p.nu = v;
    else if (k == "rho") p.rho = v;
    else if (k == "xi0" || k == "n_steps") return true;  // consumed by the caller
    else return false;
    return true;
  });
  p.validate();
  return p;
}

}  // namespace sinc
