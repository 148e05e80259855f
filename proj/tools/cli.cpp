#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "presets.hpp"
#include "sinc/analytics.hpp"
#include "sinc/competitors.hpp"
#include "sinc/sinc.hpp"
#include "surface.hpp"

namespace sinc::cli {
namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

// Options shared by every command that builds a model.
struct ModelOptions {
  std::string model = "gbm";
  std::string params_file;
  std::optional<double> sigma, lambda, eta_vol, v_bar, v0, rho, C, G, M, Y, H, nu, xi0;
  std::string xi_curve;
  std::optional<std::size_t> n_steps;
  double s0 = 1.0, r = 0.0, q = 0.0, T = 1.0;

  void add(CLI::App* app, bool with_maturity) {
    app->add_option("--model", model, "gbm | heston | cgmy | rheston")->required();
    app->add_option("--params", params_file, "JSON or TOML parameter file");
    app->add_option("--sigma", sigma, "GBM volatility");
    app->add_option("--lambda", lambda, "Heston mean-reversion speed");
    app->add_option("--eta-vol", eta_vol, "Heston vol-of-vol");
    app->add_option("--v-bar", v_bar, "Heston long-run variance");
    app->add_option("--v0", v0, "Heston initial variance");
    app->add_option("--rho", rho, "correlation (Heston, rough Heston)");
    app->add_option("--C", C, "CGMY C");
    app->add_option("--G", G, "CGMY G");
    app->add_option("--M", M, "CGMY M");
    app->add_option("--Y", Y, "CGMY Y");
    app->add_option("--H", H, "rough Heston Hurst exponent");
    app->add_option("--nu", nu, "rough Heston vol-of-vol");
    app->add_option("--xi0", xi0, "flat forward variance");
    app->add_option("--xi-curve", xi_curve, "forward variance CSV (time,value)");
    app->add_option("--n-steps", n_steps, "fractional Riccati steps");
    app->add_option("--s0", s0, "spot");
    app->add_option("--r", r, "interest rate");
    app->add_option("--q", q, "dividend yield");
    if (with_maturity) app->add_option("--T", T, "maturity in years")->required();
  }

  ModelSpec spec() const {
    ModelSpec s;
    s.model = model == "rough_heston" ? "rheston" : model;
    if (!params_file.empty()) s.apply(load_params_file(params_file));
    else s.apply(ParamsDocument{});
    if (sigma) s.gbm.sigma = *sigma;
    if (lambda) s.heston.lambda = *lambda;
    if (eta_vol) s.heston.eta_vol = *eta_vol;
    if (v_bar) s.heston.v_bar = *v_bar;
    if (v0) s.heston.v0 = *v0;
    if (rho) s.heston.rho = s.rough.rho = *rho;
    if (C) s.cgmy.C = *C;
    if (G) s.cgmy.G = *G;
    if (M) s.cgmy.M = *M;
    if (Y) s.cgmy.Y = *Y;
    if (H) s.rough.H = *H;
    if (nu) s.rough.nu = *nu;
    if (xi0) s.curve = ForwardVarianceCurve::flat(*xi0);
    if (!xi_curve.empty()) s.curve = ForwardVarianceCurve::from_csv_file(xi_curve);
    if (n_steps) s.n_steps = *n_steps;
    return s;
  }

  MarketSpec market() const {
    MarketSpec m{s0, r, q, T};
    m.validate();
    return m;
  }
};

// Writes to --output when given, otherwise to the command's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DomainError("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

TruncationRange range_for(const CharacteristicFunction& cf, std::optional<double> x_c) {
  return x_c ? TruncationRange::symmetric(*x_c) : find_truncation(cf);
}

struct PriceOptions {
  ModelOptions model;
  std::vector<double> strikes;
  std::string kind = "pv";
  std::string method = "sinc";
  std::size_t n_f = 128;
  std::optional<double> x_c;
  double beta = 1.0;
  double alpha_cm = 0.4;
  double epsilon = 0.0;
  bool iv = false;
  std::string format = "csv";
  std::string output;
};

int cmd_price(const PriceOptions& o, std::ostream& out) {
  const ModelSpec spec = o.model.spec();
  const MarketSpec m = o.model.market();
  const PayoffKind kind = payoff_kind_from_string(o.kind);
  const CharacteristicFunction cf = spec.make_cf(m);
  const TruncationRange range = range_for(cf, o.x_c);
  const bool pv = kind == PayoffKind::PvPut || kind == PayoffKind::PvCall;
  if (o.iv && !pv) throw DomainError("--iv needs a PV payoff (pv or call)");
  std::vector<double> prices;
  std::vector<std::uint32_t> flags(o.strikes.size(), kFlagNone);
  if (o.method == "sinc") {
    const auto res = price_strikes(m, cf, o.strikes, kind, o.n_f, range);
    for (std::size_t i = 0; i < res.size(); ++i) {
      prices.push_back(res[i].price);
      flags[i] = res[i].flags;
    }
  } else if (o.method == "cos") {
    CosConfig cfg;
    cfg.n_f = o.n_f;
    cfg.range = range;
    prices = cos_prices(cf, m, o.strikes, kind, cfg);
  } else {
    const std::string base = o.method.substr(0, o.method.find('-'));
    const std::string variant = o.method.find("frfft") != std::string::npos ? "frfft" : "fft";
    const SmileMethod sm = smile_method_from(base, variant);
    prices = smile_prices(cf, m, o.strikes, range.half_width(), sm, o.n_f, o.beta, o.alpha_cm,
                          o.epsilon, kind);
  }
  std::vector<double> vols;
  if (o.iv) {
    const OptionType type = kind == PayoffKind::PvPut ? OptionType::Put : OptionType::Call;
    for (std::size_t i = 0; i < prices.size(); ++i) vols.push_back(implied_vol(prices[i], m, o.strikes[i], type));
  }
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["model"] = spec.model;
    j["method"] = o.method;
    j["kind"] = to_string(kind);
    j["T"] = m.maturity;
    j["NF"] = o.n_f;
    j["Xc"] = range.half_width();
    j["results"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < prices.size(); ++i) {
      nlohmann::ordered_json row;
      row["K"] = o.strikes[i];
      row["price"] = fmt(prices[i]);
      if (o.iv) row["iv"] = fmt(vols[i]);
      row["flags"] = flags[i];
      j["results"].push_back(row);
    }
    out << j.dump(2) << '\n';
  } else {
    out << "method,kind,K,T,NF,Xc,price" << (o.iv ? ",iv" : "") << ",flags\n";
    for (std::size_t i = 0; i < prices.size(); ++i) {
      out << o.method << ',' << to_string(kind) << ',' << fmt(o.strikes[i]) << ',' << fmt(m.maturity)
          << ',' << o.n_f << ',' << fmt(range.half_width()) << ',' << fmt(prices[i]);
      if (o.iv) out << ',' << fmt(vols[i]);
      out << ',' << flags[i] << '\n';
    }
  }
  return kExitOk;
}

struct TableOptions {
  std::string id;
  std::optional<double> x_c;
  bool auto_xc = false;
  std::optional<std::size_t> n_f_hi;
  std::string benchmarks_path;
  std::string output;
};

int cmd_table(const TableOptions& o, std::ostream& out) {
  const TableSpec t = table_spec(o.id);
  const CharacteristicFunction cf = t.model.make_cf(t.market);
  const TruncationRange range = o.auto_xc ? find_truncation(cf) : TruncationRange::symmetric(o.x_c.value_or(t.x_c));
  const std::size_t n_hi = o.n_f_hi.value_or(t.n_f_hi);
  std::vector<ErrorRecord> records;
  std::ostringstream bench_csv;
  bench_csv << "kind,K,benchmark,digits,warning\n";
  const std::vector<Method> methods = {Method::Sinc, Method::Cos};
  for (const PayoffKind kind : {PayoffKind::PvPut, t.digital_kind}) {
    StudySetting s;
    s.market = t.market;
    s.strikes = t.strikes;
    s.kind = kind;
    s.range = range;
    s.benchmarks = high_precision_benchmarks(cf, t.market, t.strikes, kind, range, n_hi);
    for (std::size_t i = 0; i < s.strikes.size(); ++i)
      bench_csv << to_string(kind) << ',' << fmt(s.strikes[i]) << ',' << fmt(s.benchmarks[i].value) << ','
                << s.benchmarks[i].digits_retained << ',' << (s.benchmarks[i].disagreement_warning ? 1 : 0)
                << '\n';
    const auto recs = convergence_study(cf, s, t.n_f, methods);
    records.insert(records.end(), recs.begin(), recs.end());
  }
  write_error_csv(out, records);
  if (!o.benchmarks_path.empty()) {
    std::ofstream b(o.benchmarks_path);
    if (!b) throw DomainError("cannot open " + o.benchmarks_path);
    b << bench_csv.str();
  }
  return kExitOk;
}

struct PdfOptions {
  ModelOptions model;
  std::optional<double> x_c;
  std::size_t n = 1024;
  std::size_t points = 201;
  bool with_cdf = false;
  std::string output;
};

int cmd_pdf(const PdfOptions& o, std::ostream& out) {
  const ModelSpec spec = o.model.spec();
  const MarketSpec m = o.model.market();
  const CharacteristicFunction cf = spec.make_cf(m);
  const TruncationRange range = range_for(cf, o.x_c);
  if (o.points < 2) throw DomainError("--points must be >= 2");
  std::vector<double> grid(o.points);
  for (std::size_t i = 0; i < o.points; ++i)
    grid[i] = range.x_l + (range.x_h - range.x_l) * static_cast<double>(i) / static_cast<double>(o.points - 1);
  const std::vector<double> dens = pdf(cf, grid, range, o.n);
  std::optional<DigitalSamples> samples;
  if (o.with_cdf) samples = sample_digital(cf, range, std::max<std::size_t>(1, o.n / 2), false);
  out << "x,density" << (o.with_cdf ? ",cdf" : "") << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << fmt(grid[i]) << ',' << fmt(dens[i]);
    if (samples) out << ',' << fmt(digital_expectation(*samples, grid[i]).expectation);
    out << '\n';
  }
  return kExitOk;
}

struct SweepOptions {
  ModelOptions model;
  std::string surface_path;
  std::size_t per_smile = 21;
  std::string method = "lewis";
  std::string variant = "frfft";
  std::size_t n_f = 4096;
  std::vector<double> betas;
  double beta_min = 0.25, beta_max = 4.0;
  std::size_t beta_count = 9;
  double alpha_cm = 0.4;
  std::size_t n_f_bench = 4096;
  std::string output;
};

int cmd_beta_sweep(const SweepOptions& o, std::ostream& out) {
  const ModelSpec spec = o.model.spec();
  const MarketSpec base = o.model.market();
  const Surface surface = o.surface_path.empty() ? synthetic_surface(base, o.per_smile)
                                                 : load_surface_csv(o.surface_path);
  std::vector<double> betas = o.betas;
  if (betas.empty()) {
    if (!(o.beta_min > 0.0 && o.beta_max >= o.beta_min) || o.beta_count == 0)
      throw DomainError("beta grid needs 0 < beta-min <= beta-max and beta-count >= 1");
    for (std::size_t i = 0; i < o.beta_count; ++i) {
      const double w = o.beta_count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(o.beta_count - 1);
      betas.push_back(o.beta_min * std::pow(o.beta_max / o.beta_min, w));
    }
  }
  const SmileMethod method = smile_method_from(o.method, o.variant);
  const SurfaceContext ctx = build_surface_context(spec, base, surface, o.n_f_bench);
  out << "# method " << to_string(method) << ", NF " << o.n_f << ", beta grid:";
  for (const double b : betas) out << ' ' << fmt(b);
  out << '\n' << "beta,mean_abs_iv_err,failed\n";
  for (const double b : betas) {
    const SurfaceError e = surface_error(ctx, method, o.n_f, b, o.alpha_cm);
    out << fmt(b) << ',' << fmt(e.mean_abs_iv_error) << ',' << e.failed_inversions << '\n';
  }
  return kExitOk;
}

void write_error(std::ostream& err, const std::string& type, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"]["type"] = type;
  j["error"]["message"] = message;
  err << j.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier option pricing with the SINC, COS, Lewis and Carr-Madan methods", "sincprice"};
  app.require_subcommand(1);

  PriceOptions price_o;
  auto* price = app.add_subcommand("price", "price options at given strikes");
  price_o.model.add(price, true);
  price->add_option("--K", price_o.strikes, "strike(s)")->required()->delimiter(',');
  price->add_option("--kind", price_o.kind, "pv | call | con | aon");
  price->add_option("--method", price_o.method, "sinc | sinc-fft | sinc-frfft | cos | lewis | lewis-frfft | carrmadan | carrmadan-frfft");
  price->add_option("--nf", price_o.n_f, "number of CF evaluations");
  price->add_option("--xc", price_o.x_c, "truncation half-width (default: cutting rule)");
  price->add_option("--beta", price_o.beta, "Lewis / Carr-Madan spacing multiplier");
  price->add_option("--alpha-cm", price_o.alpha_cm, "Carr-Madan damping");
  price->add_option("--epsilon", price_o.epsilon, "frFFT fractional parameter (default: covering grid)");
  price->add_flag("--iv", price_o.iv, "also report Black-Scholes implied volatility");
  price->add_option("--format", price_o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  price->add_option("--output", price_o.output, "output file");

  TableOptions table_o;
  auto* table = app.add_subcommand("table", "error grid of a convergence table");
  table->add_option("--id", table_o.id, "table id")->required()->check(CLI::IsMember(table_ids()));
  table->add_option("--xc", table_o.x_c, "override the truncation half-width");
  table->add_flag("--auto-xc", table_o.auto_xc, "use the cutting rule instead of the tabulated half-width");
  table->add_option("--nf-hi", table_o.n_f_hi, "benchmark resolution per leg");
  table->add_option("--benchmarks", table_o.benchmarks_path, "also write the benchmarks to this CSV");
  table->add_option("--output", table_o.output, "output file");

  PdfOptions pdf_o;
  auto* pdfc = app.add_subcommand("pdf", "density (and CDF) on a uniform grid over the truncation range");
  pdf_o.model.add(pdfc, true);
  pdfc->add_option("--xc", pdf_o.x_c, "truncation half-width (default: cutting rule)");
  pdfc->add_option("--n", pdf_o.n, "frequency count N");
  pdfc->add_option("--points", pdf_o.points, "grid points");
  pdfc->add_flag("--cdf", pdf_o.with_cdf, "add a CDF column");
  pdfc->add_option("--output", pdf_o.output, "output file");

  SweepOptions sweep_o;
  auto* sweep = app.add_subcommand("beta-sweep", "mean implied-vol error of Lewis / Carr-Madan over a beta grid");
  sweep_o.model.add(sweep, false);
  sweep->add_option("--surface", sweep_o.surface_path, "CSV of K,T rows (default: synthetic surface)");
  sweep->add_option("--per-smile", sweep_o.per_smile, "strikes per maturity of the synthetic surface");
  sweep->add_option("--method", sweep_o.method, "lewis | carrmadan")->check(CLI::IsMember({"lewis", "carrmadan"}));
  sweep->add_option("--variant", sweep_o.variant, "fft | frfft")->check(CLI::IsMember({"fft", "frfft"}));
  sweep->add_option("--nf", sweep_o.n_f, "grid size N_F");
  sweep->add_option("--betas", sweep_o.betas, "explicit beta values")->delimiter(',');
  sweep->add_option("--beta-min", sweep_o.beta_min, "smallest beta of a geometric grid");
  sweep->add_option("--beta-max", sweep_o.beta_max, "largest beta of a geometric grid");
  sweep->add_option("--beta-count", sweep_o.beta_count, "beta grid size");
  sweep->add_option("--alpha-cm", sweep_o.alpha_cm, "Carr-Madan damping");
  sweep->add_option("--nf-bench", sweep_o.n_f_bench, "benchmark resolution per leg");
  sweep->add_option("--output", sweep_o.output, "output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    write_error(err, "usage", e.what());
    return kExitUsage;
  }

  try {
    if (*price) {
      Sink sink(price_o.output, out);
      return cmd_price(price_o, sink.get());
    }
    if (*table) {
      Sink sink(table_o.output, out);
      return cmd_table(table_o, sink.get());
    }
    if (*pdfc) {
      Sink sink(pdf_o.output, out);
      return cmd_pdf(pdf_o, sink.get());
    }
    if (*sweep) {
      Sink sink(sweep_o.output, out);
      return cmd_beta_sweep(sweep_o, sink.get());
    }
  } catch (const DomainError& e) {
    write_error(err, "domain", e.what());
    return kExitUsage;
  } catch (const NumericError& e) {
    write_error(err, "numeric", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    write_error(err, "internal", e.what());
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace sinc::cli
