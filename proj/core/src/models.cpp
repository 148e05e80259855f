#include "sinc/models.hpp"

#include <cmath>
#include <algorithm>
#include <memory>
#include <numbers>
#include <string>

namespace sinc {
namespace {

constexpr cplx I{0.0, 1.0};

// Single conversion site from cycles to angular frequency.
inline cplx angular(cplx kappa) { return kTwoPi * kappa; }

}  // namespace

void GbmParams::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("gbm: sigma must be > 0");
}

void HestonParams::validate() const {
  if (!(lambda > 0.0) || !(eta_vol > 0.0) || !(v_bar > 0.0) || !(v0 > 0.0))
    throw DomainError("heston: lambda, eta_vol, v_bar, v0 must be > 0");
  if (!(rho >= -1.0 && rho <= 1.0)) throw DomainError("heston: rho must lie in [-1, 1]");
}

void CgmyParams::validate() const {
  if (!(C > 0.0)) throw DomainError("cgmy: C must be > 0");
  if (!(G > 0.0) || !(M > 0.0)) throw DomainError("cgmy: G and M must be > 0");
  if (!(Y < 2.0) || !std::isfinite(Y)) throw DomainError("cgmy: Y must be < 2");
}

cplx cf_gbm(const GbmParams& p, const MarketSpec& m, cplx kappa) {
  const cplx u = angular(kappa);
  const double var = p.sigma * p.sigma * m.maturity;
  return std::exp(I * u * (-0.5 * var) - 0.5 * u * u * var);
}

cplx cf_heston(const HestonParams& p, const MarketSpec& m, cplx kappa, double exponent_cap,
               bool* overflowed) {
  if (overflowed) *overflowed = false;
  if (kappa == cplx{}) return 1.0;
  const cplx u = angular(kappa);
  const double T = m.maturity;
  const double eta2 = p.eta_vol * p.eta_vol;
  const cplx beta = p.lambda - p.rho * p.eta_vol * I * u;
  const cplx d = std::sqrt(beta * beta + eta2 * (I * u + u * u));
  const cplx minus = beta - d;
  const cplx g = minus / (beta + d);
  const cplx edt = std::exp(-d * T);
  const cplx one_minus_gedt = 1.0 - g * edt;
  const cplx C = p.lambda * p.v_bar / eta2 * (minus * T - 2.0 * std::log(one_minus_gedt / (1.0 - g)));
  const cplx D = minus / eta2 * (1.0 - edt) / one_minus_gedt;
  const cplx exponent = C + D * p.v0;
  if (!(exponent.real() <= exponent_cap)) {
    if (overflowed) *overflowed = true;
    return 0.0;
  }
  return std::exp(exponent);
}

cplx cgmy_exponent(const CgmyParams& p, cplx u) {
  const cplx left = p.M - I * u;
  const cplx right = p.G + I * u;
  if (p.Y == 0.0) {
    return -p.C * (std::log(left) - std::log(p.M) + std::log(right) - std::log(p.G));
  }
  if (p.Y == 1.0) {
    return p.C * (left * std::log(left) - p.M * std::log(p.M) + right * std::log(right) -
                  p.G * std::log(p.G));
  }
  return p.C * std::tgamma(-p.Y) *
         (std::pow(left, p.Y) - std::pow(p.M, p.Y) + std::pow(right, p.Y) - std::pow(p.G, p.Y));
}

cplx cf_cgmy(const CgmyParams& p, const MarketSpec& m, cplx kappa) {
  if (kappa == cplx{}) return 1.0;
  const cplx u = angular(kappa);
  if (!(u.imag() > -p.M && u.imag() < p.G))
    throw DomainError("cgmy: frequency outside the analyticity strip, Im(2 pi kappa) = " +
                      std::to_string(u.imag()));
  if (!(p.M > 1.0)) throw DomainError("cgmy: M must exceed 1 for a finite martingale compensator");
  // omega makes E[exp(s_T)] = 1 on the drift-adjusted log-return.
  const double omega = -cgmy_exponent(p, cplx{0.0, -1.0}).real();
  return std::exp(m.maturity * (I * u * omega + cgmy_exponent(p, u)));
}

CharacteristicFunction make_gbm_cf(const GbmParams& p, const MarketSpec& m) {
  p.validate();
  m.validate();
  return CharacteristicFunction([p, m](cplx k) { return cf_gbm(p, m, k); }, "gbm");
}

CharacteristicFunction make_heston_cf(const HestonParams& p, const MarketSpec& m, double exponent_cap) {
  p.validate();
  m.validate();
  auto counter = std::make_shared<std::atomic<std::size_t>>(0);
  auto point = [p, m, exponent_cap, counter](cplx k) {
    bool overflowed = false;
    const cplx v = cf_heston(p, m, k, exponent_cap, &overflowed);
    if (overflowed) counter->fetch_add(1, std::memory_order_relaxed);
    return v;
  };
  return CharacteristicFunction(point, nullptr, "heston", counter);
}

CharacteristicFunction make_cgmy_cf(const CgmyParams& p, const MarketSpec& m) {
  p.validate();
  m.validate();
  if (!(p.M > 1.0)) throw DomainError("cgmy: M must exceed 1 for a finite martingale compensator");
  return CharacteristicFunction([p, m](cplx k) { return cf_cgmy(p, m, k); }, "cgmy");
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(kTwoPi); }

double black_scholes_put(const MarketSpec& m, double sigma, double strike) {
  if (!(strike > 0.0)) throw DomainError("black_scholes: strike must be > 0");
  if (!(sigma >= 0.0)) throw DomainError("black_scholes: sigma must be >= 0");
  const double df = m.discount();
  const double qf = m.dividend_discount();
  const double sd = sigma * std::sqrt(m.maturity);
  if (sd == 0.0) return std::max(strike * df - m.spot * qf, 0.0);
  const double d1 = (std::log(m.spot / strike) + m.drift()) / sd + 0.5 * sd;
  const double d2 = d1 - sd;
  return strike * df * norm_cdf(-d2) - m.spot * qf * norm_cdf(-d1);
}

double black_scholes_call(const MarketSpec& m, double sigma, double strike) {
  if (!(strike > 0.0)) throw DomainError("black_scholes: strike must be > 0");
  if (!(sigma >= 0.0)) throw DomainError("black_scholes: sigma must be >= 0");
  const double df = m.discount();
  const double qf = m.dividend_discount();
  const double sd = sigma * std::sqrt(m.maturity);
  if (sd == 0.0) return std::max(m.spot * qf - strike * df, 0.0);
  const double d1 = (std::log(m.spot / strike) + m.drift()) / sd + 0.5 * sd;
  const double d2 = d1 - sd;
  return m.spot * qf * norm_cdf(d1) - strike * df * norm_cdf(d2);
}

double black_scholes_price(const MarketSpec& m, double sigma, double strike, OptionType type) {
  return type == OptionType::Put ? black_scholes_put(m, sigma, strike)
                                 : black_scholes_call(m, sigma, strike);
}

double black_scholes_vega(const MarketSpec& m, double sigma, double strike) {
  const double sqrt_t = std::sqrt(m.maturity);
  const double sd = sigma * sqrt_t;
  if (sd <= 0.0) return 0.0;
  const double d1 = (std::log(m.spot / strike) + m.drift()) / sd + 0.5 * sd;
  return m.spot * m.dividend_discount() * norm_pdf(d1) * sqrt_t;
}

double lognormal_density(const MarketSpec& m, double sigma, double s) {
  const double sd = sigma * std::sqrt(m.maturity);
  const double z = (s + 0.5 * sd * sd) / sd;
  return norm_pdf(z) / sd;
}

}  // namespace sinc
