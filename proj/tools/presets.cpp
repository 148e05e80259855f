#include "presets.hpp"

namespace sinc::cli {

void ModelSpec::apply(const ParamsDocument& doc) {
  if (model == "gbm") {
    gbm = gbm_params_from(doc, gbm);
  } else if (model == "heston") {
    heston = heston_params_from(doc, heston);
  } else if (model == "cgmy") {
    cgmy = cgmy_params_from(doc, cgmy);
  } else if (model == "rheston") {
    rough = rough_heston_params_from(doc, rough);
    if (auto it = doc.numbers.find("rough_heston"); it != doc.numbers.end()) {
      if (auto f = it->second.find("xi0"); f != it->second.end()) curve = ForwardVarianceCurve::flat(f->second);
      if (auto f = it->second.find("n_steps"); f != it->second.end()) n_steps = static_cast<std::size_t>(f->second);
    }
    if (auto it = doc.strings.find("rough_heston"); it != doc.strings.end()) {
      if (auto f = it->second.find("xi_curve"); f != it->second.end())
        curve = ForwardVarianceCurve::from_csv_file(f->second);
    }
  } else {
    throw DomainError("unknown model '" + model + "'");
  }
}

CharacteristicFunction ModelSpec::make_cf(const MarketSpec& m) const {
  if (model == "gbm") return make_gbm_cf(gbm, m);
  if (model == "heston") return make_heston_cf(heston, m);
  if (model == "cgmy") return make_cgmy_cf(cgmy, m);
  if (model == "rheston") return make_rough_heston_cf(rough, curve, m, n_steps);
  throw DomainError("unknown model '" + model + "'");
}

const std::vector<std::string>& table_ids() {
  static const std::vector<std::string> ids = {
      "gbm-t01",     "heston-t01",   "heston-t1",    "cgmy15-t1",  "cgmy15-t001", "cgmy198-t1",
      "cgmy198-t001", "cgmy05-t1",   "cgmy05-t001",  "rheston-t1", "rheston-t001"};
  return ids;
}

TableSpec table_spec(const std::string& id) {
  TableSpec t;
  t.id = id;
  t.strikes = {0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4};
  auto cgmy = [&](double Y, double T, double x_c, std::vector<std::size_t> n_f) {
    t.model.model = "cgmy";
    t.model.cgmy = {1.0, 5.0, 5.0, Y};
    t.market = {1.0, 0.1, 0.0, T};
    t.digital_kind = PayoffKind::ConPut;
    t.x_c = x_c;
    t.n_f = std::move(n_f);
  };
  const std::vector<std::size_t> cgmy_short = {16, 32, 48, 64, 96, 128};
  const std::vector<std::size_t> rough_grid = {256, 512, 768, 1024, 1536, 2048};
  if (id == "gbm-t01") {
    t.model.model = "gbm";
    t.model.gbm.sigma = 0.25;
    t.market = {1.0, 0.1, 0.0, 0.1};
    t.n_f = {20, 40, 60, 80, 100, 120};
    t.digital_kind = PayoffKind::ConPut;
    t.x_c = 2.0105;
  } else if (id == "heston-t01" || id == "heston-t1") {
    const bool short_t = id == "heston-t01";
    t.model.model = "heston";
    t.market = {1.0, 0.0, 0.0, short_t ? 0.1 : 1.0};
    t.n_f = short_t ? std::vector<std::size_t>{64, 128, 192, 256, 384, 512}
                    : std::vector<std::size_t>{128, 192, 256, 384, 512, 768};
    t.digital_kind = PayoffKind::AonPut;
    t.x_c = short_t ? 2.0499 : 12.1802;
  } else if (id == "cgmy15-t1") {
    cgmy(1.5, 1.0, 33.0891, cgmy_short);
  } else if (id == "cgmy15-t001") {
    cgmy(1.5, 0.01, 11.4582, {16, 32, 64, 128, 256, 512});
  } else if (id == "cgmy198-t1") {
    cgmy(1.98, 1.0, 248.9047, cgmy_short);
  } else if (id == "cgmy198-t001") {
    cgmy(1.98, 0.01, 24.9357, cgmy_short);
  } else if (id == "cgmy05-t1") {
    cgmy(0.5, 1.0, 18.3512, {16, 32, 64, 128, 256, 512});
  } else if (id == "cgmy05-t001") {
    cgmy(0.5, 0.01, 12.0723, {256, 512, 1024, 2048, 4096, 8192});
  } else if (id == "rheston-t1" || id == "rheston-t001") {
    const bool short_t = id == "rheston-t001";
    t.model.model = "rheston";
    t.market = {1.0, 0.0, 0.0, short_t ? 0.01 : 1.0};
    t.n_f = rough_grid;
    t.digital_kind = PayoffKind::AonPut;
    t.x_c = short_t ? 2.7074 : 18.9469;
    t.n_f_hi = 1u << 13;
  } else {
    throw DomainError("unknown table id '" + id + "'");
  }
  return t;
}

}  // namespace sinc::cli
