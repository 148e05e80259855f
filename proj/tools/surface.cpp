#include "surface.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "sinc/analytics.hpp"
#include "sinc/competitors.hpp"
#include "sinc/fft.hpp"

namespace sinc::cli {
namespace {

const std::vector<double> kSyntheticMaturities = {0.01, 0.025, 0.05, 0.1, 0.25,
                                                  0.5,  0.75,  1.0,  1.5, 2.5};

// Fractional parameter for a grid whose half-span at epsilon = 1 is `half_span`.
double covering_epsilon(const MarketSpec& m, std::span<const double> strikes, double half_span,
                        std::size_t n) {
  std::vector<double> ks;
  for (const double K : strikes) ks.push_back(m.log_moneyness(K));
  return frfft_epsilon_for(ks, half_span, n);
}

}  // namespace

std::size_t Surface::size() const {
  std::size_t n = 0;
  for (const auto& s : strikes) n += s.size();
  return n;
}

Surface synthetic_surface(const MarketSpec& base, std::size_t per_smile) {
  if (per_smile < 2) throw DomainError("surface: need at least two strikes per smile");
  Surface s;
  for (const double T : kSyntheticMaturities) {
    MarketSpec m = base;
    m.maturity = T;
    const double half = 0.5 * std::sqrt(T / 2.5);
    std::vector<double> strikes(per_smile);
    for (std::size_t i = 0; i < per_smile; ++i) {
      const double k = -half + 2.0 * half * static_cast<double>(i) / static_cast<double>(per_smile - 1);
      strikes[i] = m.strike_from_log_moneyness(k);
    }
    s.maturities.push_back(T);
    s.strikes.push_back(std::move(strikes));
  }
  return s;
}

Surface load_surface_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("surface: cannot open " + path);
  std::map<double, std::vector<double>> by_t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream row(line);
    std::string k_str, t_str;
    std::getline(row, k_str, ',');
    std::getline(row, t_str);
    try {
      const double K = std::stod(k_str);
      const double T = std::stod(t_str);
      if (!(K > 0.0) || !(T > 0.0)) throw DomainError("surface: K and T must be > 0 in '" + line + "'");
      by_t[T].push_back(K);
    } catch (const std::invalid_argument&) {
      if (!first) throw DomainError("surface: malformed row '" + line + "'");
    }
    first = false;
  }
  Surface s;
  for (auto& [T, ks] : by_t) {
    std::sort(ks.begin(), ks.end());
    s.maturities.push_back(T);
    s.strikes.push_back(std::move(ks));
  }
  if (s.maturities.empty()) throw DomainError("surface: no rows in " + path);
  return s;
}

SmileMethod smile_method_from(const std::string& method, const std::string& variant) {
  const bool fr = variant == "frfft";
  if (!fr && variant != "fft") throw DomainError("unknown transform variant '" + variant + "'");
  if (method == "sinc") return fr ? SmileMethod::SincFrfft : SmileMethod::SincFft;
  if (method == "lewis") return fr ? SmileMethod::LewisFrfft : SmileMethod::LewisFft;
  if (method == "carrmadan") return fr ? SmileMethod::CarrMadanFrfft : SmileMethod::CarrMadanFft;
  throw DomainError("unknown smile method '" + method + "'");
}

const char* to_string(SmileMethod m) {
  switch (m) {
    case SmileMethod::SincFft: return "sinc-fft";
    case SmileMethod::SincFrfft: return "sinc-frfft";
    case SmileMethod::LewisFft: return "lewis-fft";
    case SmileMethod::LewisFrfft: return "lewis-frfft";
    case SmileMethod::CarrMadanFft: return "carrmadan-fft";
    case SmileMethod::CarrMadanFrfft: return "carrmadan-frfft";
  }
  return "unknown";
}

std::vector<double> smile_prices(const CharacteristicFunction& cf, const MarketSpec& m,
                                 std::span<const double> strikes, double x_c, SmileMethod method,
                                 std::size_t n_f, double beta, double alpha_cm, double epsilon,
                                 PayoffKind kind) {
  SmileResult grid;
  switch (method) {
    case SmileMethod::SincFft:
    case SmileMethod::SincFrfft: {
      const std::size_t n = 2 * n_f;
      double eps = 1.0;
      if (method == SmileMethod::SincFrfft) eps = epsilon > 0.0 ? epsilon : covering_epsilon(m, strikes, x_c, n);
      grid = sinc_fft_smile(cf, m, x_c, n_f, kind, eps);
      break;
    }
    case SmileMethod::LewisFft:
    case SmileMethod::LewisFrfft: {
      LewisConfig cfg{n_f, beta, x_c, 1.0};
      if (method == SmileMethod::LewisFrfft)
        cfg.epsilon = epsilon > 0.0 ? epsilon : covering_epsilon(m, strikes, kPi / cfg.eta(), n_f);
      grid = lewis_fft(cf, m, cfg, kind);
      break;
    }
    case SmileMethod::CarrMadanFft:
    case SmileMethod::CarrMadanFrfft: {
      CarrMadanConfig cfg;
      cfg.n = n_f;
      cfg.beta = beta;
      cfg.x_c = x_c;
      cfg.alpha_cm = alpha_cm;
      if (method == SmileMethod::CarrMadanFrfft)
        cfg.epsilon = epsilon > 0.0 ? epsilon : covering_epsilon(m, strikes, kPi / cfg.eta(), n_f);
      grid = carr_madan_fft(cf, m, cfg, kind);
      break;
    }
  }
  return interpolate_strikes(grid, strikes).prices;
}

SurfaceContext build_surface_context(const ModelSpec& model, const MarketSpec& base,
                                     const Surface& surface, std::size_t n_f_bench) {
  SurfaceContext ctx;
  ctx.surface = surface;
  for (std::size_t i = 0; i < surface.maturities.size(); ++i) {
    MarketSpec m = base;
    m.maturity = surface.maturities[i];
    CharacteristicFunction cf = model.make_cf(m);
    const TruncationRange range = find_truncation(cf);
    const auto& strikes = surface.strikes[i];
    const auto bench = high_precision_benchmarks(cf, m, strikes, PayoffKind::PvPut, range, n_f_bench);
    std::vector<double> vols;
    for (std::size_t j = 0; j < strikes.size(); ++j) {
      const double p = 0.5 * (bench[j].sources[0] + bench[j].sources[1]);
      vols.push_back(implied_vol(p, m, strikes[j], OptionType::Put));
    }
    ctx.markets.push_back(m);
    ctx.cfs.push_back(std::move(cf));
    ctx.x_c.push_back(range.half_width());
    ctx.bench_vols.push_back(std::move(vols));
  }
  return ctx;
}

SurfaceError surface_error(const SurfaceContext& ctx, SmileMethod method, std::size_t n_f,
                           double beta, double alpha_cm, double epsilon) {
  SurfaceError out;
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < ctx.cfs.size(); ++i) {
    const auto& strikes = ctx.surface.strikes[i];
    const auto prices = smile_prices(ctx.cfs[i], ctx.markets[i], strikes, ctx.x_c[i], method, n_f,
                                     beta, alpha_cm, epsilon);
    for (std::size_t j = 0; j < strikes.size(); ++j) {
      double err = 1.0;
      try {
        err = std::abs(implied_vol(prices[j], ctx.markets[i], strikes[j], OptionType::Put) -
                       ctx.bench_vols[i][j]);
      } catch (const Error&) {
        ++out.failed_inversions;
      }
      total += std::min(err, 1.0);
      ++count;
    }
  }
  out.mean_abs_iv_error = count ? total / static_cast<double>(count) : 0.0;
  return out;
}

}  // namespace sinc::cli
