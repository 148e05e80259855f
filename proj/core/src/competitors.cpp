#include "sinc/competitors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "sinc/moments.hpp"

namespace sinc {
namespace {

constexpr cplx I{0.0, 1.0};

// Grid integration shared by Lewis and Carr-Madan: x_j = eta w_j g_j summed
// against e^{-i u_j k_v} on the centered strike grid.
std::vector<double> integrate_on_grid(std::vector<cplx> x, double eta, double epsilon) {
  const std::size_t n = x.size();
  const double b = kPi / eta;
  std::vector<cplx> sums;
  if (epsilon == 1.0) {
    // k_v = -b + gamma v: e^{-i eta j k_v} = e^{i eta j b} e^{-i 2 pi j v / N}.
    for (std::size_t j = 0; j < n; ++j) x[j] *= std::exp(I * (eta * static_cast<double>(j) * b));
    dft(x, -1);
    sums = std::move(x);
  } else {
    sums = fractional_dft_centered(x, epsilon);
  }
  std::vector<double> out(n);
  for (std::size_t v = 0; v < n; ++v) out[v] = sums[v].real();
  return out;
}

SmileResult finish_smile(const MarketSpec& m, PayoffKind kind, const char* method, std::size_t n,
                         double eta, double epsilon, const std::vector<double>& call_norm,
                         std::uint32_t flags) {
  const double gamma = kTwoPi / (static_cast<double>(n) * eta) * epsilon;
  SmileResult s;
  s.market = m;
  s.kind = kind;
  s.method = method;
  s.n_f = n;
  s.strikes.resize(n);
  s.prices.resize(n);
  s.flags.assign(n, flags);
  const double asset = m.spot * m.dividend_discount();
  for (std::size_t v = 0; v < n; ++v) {
    const double k = (static_cast<double>(v) - static_cast<double>(n / 2)) * gamma;
    const double K = m.strike_from_log_moneyness(k);
    s.strikes[v] = K;
    const double call = asset * call_norm[v];
    s.prices[v] = kind == PayoffKind::PvCall ? call : call - asset + K * m.discount();
  }
  return s;
}

void check_grid(std::size_t n, double beta, double x_c, double epsilon) {
  if (n < 8 || !std::has_single_bit(n)) throw DomainError("fft grid: N must be a power of two >= 8");
  if (!(beta > 0.0)) throw DomainError("fft grid: beta must be > 0");
  if (!(x_c > 0.0)) throw DomainError("fft grid: X_c must be > 0");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("fft grid: epsilon must lie in (0, 1]");
}

void check_kind(PayoffKind kind) {
  if (kind != PayoffKind::PvCall && kind != PayoffKind::PvPut)
    throw DomainError("fft competitors price PV calls and puts only");
}

}  // namespace

TruncationRange resolve_cos_range(const CharacteristicFunction& cf, const CosConfig& cfg) {
  if (cfg.range) {
    cfg.range->validate();
    return *cfg.range;
  }
  if (cfg.L) {
    const TruncationRange probe = find_truncation(cf);
    return trunc_rule_range(cf, *cfg.L, probe.half_width());
  }
  return find_truncation(cf);
}

std::vector<double> cos_prices(const CharacteristicFunction& cf, const MarketSpec& m,
                               std::span<const double> strikes, PayoffKind kind,
                               const CosConfig& cfg) {
  m.validate();
  if (cfg.n_f == 0) throw DomainError("cos: N_F must be >= 1");
  const TruncationRange range = resolve_cos_range(cf, cfg);
  const double a = range.x_l;
  const double width = range.x_h - range.x_l;
  const std::size_t n = cfg.n_f;
  // Term u uses the CF at u / (2 width); u = 0 is the normalization and costs nothing.
  std::vector<cplx> kappas(n > 0 ? n - 1 : 0);
  for (std::size_t u = 1; u < n; ++u) kappas[u - 1] = static_cast<double>(u) / (2.0 * width);
  const std::vector<cplx> f = cf.evaluate(kappas);
  std::vector<double> coef(n);  // (2/width) Re[f e^{-i omega a}], halved at u = 0
  coef[0] = 1.0 / width;
  for (std::size_t u = 1; u < n; ++u) {
    const double omega = static_cast<double>(u) * kPi / width;
    coef[u] = 2.0 / width * (f[u - 1] * std::exp(-I * omega * a)).real();
  }
  const bool need_con = kind != PayoffKind::AonPut;
  const bool need_aon = kind != PayoffKind::ConPut;
  std::vector<double> out;
  out.reserve(strikes.size());
  for (const double K : strikes) {
    if (!(K > 0.0)) throw DomainError("cos: strike must be > 0");
    const double k = std::clamp(m.log_moneyness(K), range.x_l, range.x_h);
    const double d = k - a;
    double con = 0.0, aon = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      const double omega = static_cast<double>(u) * kPi / width;
      const double s = std::sin(omega * d), c = std::cos(omega * d);
      if (need_con) con += coef[u] * (u == 0 ? d : s / omega);
      if (need_aon) aon += coef[u] * (std::exp(k) * (c + omega * s) - std::exp(a)) / (1.0 + omega * omega);
    }
    out.push_back(assemble_price(m, K, kind, con, aon));
  }
  return out;
}

double cos_price(const CharacteristicFunction& cf, const MarketSpec& m, double strike,
                 PayoffKind kind, const CosConfig& cfg) {
  return cos_prices(cf, m, std::span<const double>(&strike, 1), kind, cfg).front();
}

double cos_put(const CharacteristicFunction& cf, const MarketSpec& m, double strike,
               const CosConfig& cfg) {
  return cos_price(cf, m, strike, PayoffKind::PvPut, cfg);
}

void LewisConfig::validate() const { check_grid(n, beta, x_c, epsilon); }

void CarrMadanConfig::validate() const {
  check_grid(n, beta, x_c, epsilon);
  if (!(alpha_cm > 0.0)) throw DomainError("carr_madan: alpha_cm must be > 0");
}

SmileResult lewis_fft(const CharacteristicFunction& cf, const MarketSpec& m, const LewisConfig& cfg,
                      PayoffKind kind) {
  m.validate();
  cfg.validate();
  check_kind(kind);
  const std::size_t n = cfg.n;
  const double eta = cfg.eta();
  // 1 - e^{k/2}/pi int_0^inf Re[e^{-iuk} phi(u - i/2)] / (u^2 + 1/4) du.
  std::vector<cplx> kappas(n);
  for (std::size_t j = 0; j < n; ++j) kappas[j] = cplx{eta * static_cast<double>(j), -0.5} / kTwoPi;
  const std::size_t before = cf.warnings();
  const std::vector<cplx> phi = cf.evaluate(kappas);
  std::vector<cplx> x(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double u = eta * static_cast<double>(j);
    const double w = j == 0 ? 0.5 : 1.0;
    x[j] = eta * w * phi[j] / (u * u + 0.25);
  }
  const std::vector<double> integral = integrate_on_grid(std::move(x), eta, cfg.epsilon);
  const double gamma = kTwoPi / (static_cast<double>(n) * eta) * cfg.epsilon;
  std::vector<double> call(n);
  for (std::size_t v = 0; v < n; ++v) {
    const double k = (static_cast<double>(v) - static_cast<double>(n / 2)) * gamma;
    call[v] = 1.0 - std::exp(0.5 * k) / kPi * integral[v];
  }
  return finish_smile(m, kind, cfg.epsilon == 1.0 ? "lewis-fft" : "lewis-frfft", n, eta,
                      cfg.epsilon, call, cf.warnings() > before ? kFlagCfWarning : kFlagNone);
}

SmileResult lewis_call_fft(const CharacteristicFunction& cf, const MarketSpec& m,
                           const LewisConfig& cfg) {
  return lewis_fft(cf, m, cfg, PayoffKind::PvCall);
}

SmileResult carr_madan_fft(const CharacteristicFunction& cf, const MarketSpec& m,
                           const CarrMadanConfig& cfg, PayoffKind kind) {
  m.validate();
  cfg.validate();
  check_kind(kind);
  const std::size_t n = cfg.n;
  const double eta = cfg.eta();
  const double al = cfg.alpha_cm;
  // e^{-alpha k}/pi int_0^inf Re[e^{-iuk} psi(u)] du,
  // psi(u) = phi(u - (alpha+1) i) / (alpha^2 + alpha - u^2 + i (2 alpha + 1) u).
  std::vector<cplx> kappas(n);
  for (std::size_t j = 0; j < n; ++j)
    kappas[j] = cplx{eta * static_cast<double>(j), -(al + 1.0)} / kTwoPi;
  const std::size_t before = cf.warnings();
  const std::vector<cplx> phi = cf.evaluate(kappas);
  std::vector<cplx> x(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double u = eta * static_cast<double>(j);
    double w = j == 0 ? 0.5 : 1.0;
    if (cfg.simpson) w = (3.0 + (j % 2 == 0 ? -1.0 : 1.0) - (j == 0 ? 1.0 : 0.0)) / 3.0;
    const cplx psi = phi[j] / cplx{al * al + al - u * u, (2.0 * al + 1.0) * u};
    x[j] = eta * w * psi;
  }
  const std::vector<double> integral = integrate_on_grid(std::move(x), eta, cfg.epsilon);
  const double gamma = kTwoPi / (static_cast<double>(n) * eta) * cfg.epsilon;
  std::vector<double> call(n);
  for (std::size_t v = 0; v < n; ++v) {
    const double k = (static_cast<double>(v) - static_cast<double>(n / 2)) * gamma;
    call[v] = std::exp(-al * k) / kPi * integral[v];
  }
  return finish_smile(m, kind, cfg.epsilon == 1.0 ? "carrmadan-fft" : "carrmadan-frfft", n, eta,
                      cfg.epsilon, call, cf.warnings() > before ? kFlagCfWarning : kFlagNone);
}

SmileResult carr_madan_call_fft(const CharacteristicFunction& cf, const MarketSpec& m,
                                const CarrMadanConfig& cfg) {
  return carr_madan_fft(cf, m, cfg, PayoffKind::PvCall);
}

}  // namespace sinc
