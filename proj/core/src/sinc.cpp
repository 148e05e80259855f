#include "sinc/sinc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sinc/parallel.hpp"

namespace sinc {
namespace {

constexpr double kIllResolvedLow = -0.1;
constexpr double kIllResolvedHigh = 1.1;

std::size_t cf_warnings(const CharacteristicFunction& cf) { return cf.warnings(); }

// Quantile of the series CDF: walk outward from `start` in steps of `step`
// until the CDF crosses `level`, then bisect inside the last bucket.
std::optional<double> find_quantile(const DigitalSamples& s, double start, double level, bool lower) {
  const double x_c = s.range.half_width();
  const double step = x_c / 256.0;
  const double limit = lower ? s.range.x_l : s.range.x_h;
  double inside = start;
  for (;;) {
    const double next = lower ? inside - step : inside + step;
    if (lower ? next <= limit : next >= limit) return std::nullopt;
    const double v = digital_series(s, next);
    const bool crossed = lower ? v < level : v > level;
    if (crossed) {
      double a = inside, b = next;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (a + b);
        const double vm = digital_series(s, mid);
        if (lower ? vm < level : vm > level) b = mid;
        else a = mid;
      }
      return 0.5 * (a + b);
    }
    inside = next;
  }
}

double median(const DigitalSamples& s) {
  double a = s.range.x_l, b = s.range.x_h;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (a + b);
    if (digital_series(s, mid) < 0.5) a = mid;
    else b = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace

TruncationRange TruncationRange::symmetric(double x_c) {
  TruncationRange r{-x_c, x_c};
  r.validate();
  return r;
}

void TruncationRange::validate() const {
  if (!std::isfinite(x_l) || !std::isfinite(x_h) || !(x_l < x_h))
    throw DomainError("truncation range: need finite x_l < x_h");
}

const char* to_string(PayoffKind kind) {
  switch (kind) {
    case PayoffKind::PvPut: return "pv_put";
    case PayoffKind::PvCall: return "pv_call";
    case PayoffKind::ConPut: return "con_put";
    case PayoffKind::AonPut: return "aon_put";
  }
  return "unknown";
}

PayoffKind payoff_kind_from_string(const std::string& name) {
  if (name == "pv" || name == "put" || name == "pv_put") return PayoffKind::PvPut;
  if (name == "call" || name == "pv_call") return PayoffKind::PvCall;
  if (name == "con" || name == "con_put") return PayoffKind::ConPut;
  if (name == "aon" || name == "aon_put") return PayoffKind::AonPut;
  throw DomainError("unknown payoff kind '" + name + "'");
}

DigitalSamples sample_digital(const CharacteristicFunction& cf, const TruncationRange& range,
                              std::size_t n_terms, bool asset) {
  range.validate();
  if (n_terms == 0) throw DomainError("sinc: number of terms must be >= 1");
  DigitalSamples s;
  s.range = range;
  s.asset = asset;
  const double x_c = range.half_width();
  const double c = range.center();
  const double shift = asset ? 1.0 / kTwoPi : 0.0;
  std::vector<cplx> kappas(n_terms);
  for (std::size_t n = 0; n < n_terms; ++n)
    kappas[n] = cplx{static_cast<double>(2 * n + 1) / (2.0 * x_c), -shift};
  const std::size_t before = cf_warnings(cf);
  s.values = cf.evaluate(kappas);
  s.cf_warnings = cf_warnings(cf) - before;
  if (c != 0.0) {
    // Move the range center to the origin: f(z) e^{-i 2 pi z c}.
    for (std::size_t n = 0; n < n_terms; ++n)
      s.values[n] *= std::exp(cplx{0.0, -kTwoPi} * kappas[n] * c);
  }
  return s;
}

double digital_series(const DigitalSamples& s, double k) {
  const double x_c = s.range.half_width();
  const double c = s.range.center();
  const double theta = kPi * (k - c) / x_c;
  // e^{i theta (2n+1)} by rotation, re-anchored every kResync terms so the
  // rounding drift stays at a few ulps.
  constexpr std::size_t kResync = 64;
  const cplx step = std::polar(1.0, 2.0 * theta);
  double acc = 0.0;
  const std::size_t n_terms = s.values.size();
  for (std::size_t start = 0; start < n_terms; start += kResync) {
    const std::size_t end = std::min(n_terms, start + kResync);
    cplx rot = std::polar(1.0, theta * static_cast<double>(2 * start + 1));
    for (std::size_t n = start; n < end; ++n) {
      const double odd = static_cast<double>(2 * n + 1);
      acc += (rot.imag() * s.values[n].real() - rot.real() * s.values[n].imag()) / odd;
      rot *= step;
    }
  }
  const double e = 0.5 + (2.0 / kPi) * acc;
  return s.asset && c != 0.0 ? e * std::exp(c) : e;
}

DigitalPrice digital_expectation(const DigitalSamples& s, double k) {
  DigitalPrice d;
  if (s.cf_warnings > 0) d.flags |= kFlagCfWarning;
  if (!(k > s.range.x_l)) {
    d.expectation = 0.0;
    d.flags |= kFlagClamped;
    return d;
  }
  if (!(k < s.range.x_h)) {
    // Full mass: P(s < inf) = 1 and E[e^s] = 1 by the martingale normalization.
    d.expectation = 1.0;
    d.flags |= kFlagClamped;
    return d;
  }
  d.expectation = digital_series(s, k);
  if (!(d.expectation >= kIllResolvedLow && d.expectation <= kIllResolvedHigh))
    d.flags |= kFlagIllResolved;
  return d;
}

TruncationRange find_truncation(const CharacteristicFunction& cf, const TruncationOptions& opts) {
  if (!(opts.tail_mass > 0.0 && opts.tail_mass < 0.5))
    throw DomainError("find_truncation: tail_mass must lie in (0, 1/2)");
  if (!(opts.initial_half_width > 0.0))
    throw DomainError("find_truncation: initial half width must be > 0");
  double x_c = opts.initial_half_width;
  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    const TruncationRange range = TruncationRange::symmetric(x_c);
    // The CDF series must resolve the tail level: add terms while the CF at
    // the last sampled frequency is still above it.
    std::size_t terms = opts.cdf_terms;
    DigitalSamples s = sample_digital(cf, range, terms, false);
    while (std::abs(s.values.back()) > 1e-2 * opts.tail_mass && terms < opts.max_cdf_terms) {
      terms = std::min(2 * terms, opts.max_cdf_terms);
      s = sample_digital(cf, range, terms, false);
    }
    const double mid = median(s);
    const auto lo = find_quantile(s, mid, opts.tail_mass, true);
    const auto hi = find_quantile(s, mid, 1.0 - opts.tail_mass, false);
    if (!lo || !hi) {
      // Tail constraints not met inside the current range: widen it.
      x_c *= 2.0;
      continue;
    }
    const double x_new = 4.0 * std::max(std::abs(*lo), std::abs(*hi));
    if (std::abs(x_new - x_c) / x_c < opts.relative_tolerance) return TruncationRange::symmetric(x_new);
    x_c = x_new;
  }
  std::ostringstream msg;
  msg << "find_truncation: no convergence after " << opts.max_iterations
      << " iterations, last range [" << -x_c << ", " << x_c << "]";
  throw NumericError(msg.str());
}

DigitalPrice con_digital(const CharacteristicFunction& cf, double k, const TruncationRange& range,
                         std::size_t n_f) {
  return digital_expectation(sample_digital(cf, range, n_f, false), k);
}

DigitalPrice aon_digital(const CharacteristicFunction& cf, double k, const TruncationRange& range,
                         std::size_t n_f) {
  return digital_expectation(sample_digital(cf, range, n_f, true), k);
}

void PricingRequest::validate() const {
  market.validate();
  if (!cf) throw DomainError("pricing: characteristic function is empty");
  if (!(strike > 0.0) || !std::isfinite(strike)) throw DomainError("pricing: strike must be > 0");
  if (n_f == 0) throw DomainError("pricing: N_F must be >= 1");
  if ((kind == PayoffKind::PvPut || kind == PayoffKind::PvCall) && n_f % 2 != 0)
    throw DomainError("pricing: a PV price splits N_F over two legs, so N_F must be even");
  if (range) range->validate();
}

double assemble_price(const MarketSpec& m, double strike, PayoffKind kind, double con, double aon) {
  const double cash = strike * m.discount();
  const double asset = m.spot * m.dividend_discount();
  switch (kind) {
    case PayoffKind::PvPut: return cash * con - asset * aon;
    case PayoffKind::PvCall: return asset * (1.0 - aon) - cash * (1.0 - con);
    case PayoffKind::ConPut: return cash * con;
    case PayoffKind::AonPut: return asset * aon;
  }
  return 0.0;
}

std::vector<PriceResult> price_strikes(const MarketSpec& market, const CharacteristicFunction& cf,
                                       std::span<const double> strikes, PayoffKind kind,
                                       std::size_t n_f, const TruncationRange& range) {
  const bool pv = kind == PayoffKind::PvPut || kind == PayoffKind::PvCall;
  const bool need_con = kind != PayoffKind::AonPut;
  const bool need_aon = kind != PayoffKind::ConPut;
  if (pv && n_f % 2 != 0) throw DomainError("pricing: N_F must be even for a PV price (two digital legs)");
  const std::size_t per_leg = pv ? n_f / 2 : n_f;
  if (per_leg == 0) throw DomainError("pricing: N_F too small for the payoff");
  std::optional<DigitalSamples> con_s, aon_s;
  if (need_con) con_s = sample_digital(cf, range, per_leg, false);
  if (need_aon) aon_s = sample_digital(cf, range, per_leg, true);
  std::vector<PriceResult> out;
  out.reserve(strikes.size());
  for (const double K : strikes) {
    if (!(K > 0.0)) throw DomainError("pricing: strike must be > 0");
    const double k = market.log_moneyness(K);
    PriceResult r;
    r.range = range;
    r.n_f = n_f;
    if (con_s) {
      r.con = digital_expectation(*con_s, k);
      r.con.scaled_price = K * market.discount() * r.con.expectation;
      r.flags |= r.con.flags;
    }
    if (aon_s) {
      r.aon = digital_expectation(*aon_s, k);
      r.aon.scaled_price = market.spot * market.dividend_discount() * r.aon.expectation;
      r.flags |= r.aon.flags;
    }
    r.price = assemble_price(market, K, kind, r.con.expectation, r.aon.expectation);
    out.push_back(r);
  }
  return out;
}

PriceResult price(const PricingRequest& req) {
  req.validate();
  const TruncationRange range = req.range ? *req.range : find_truncation(req.cf);
  const double K = req.strike;
  return price_strikes(req.market, req.cf, std::span<const double>(&K, 1), req.kind, req.n_f, range)
      .front();
}

PriceResult pv_put(const PricingRequest& req) {
  if (req.kind != PayoffKind::PvPut) throw DomainError("pv_put: request kind must be pv_put");
  return price(req);
}

PriceResult pv_call(const PricingRequest& req) {
  if (req.kind != PayoffKind::PvCall) throw DomainError("pv_call: request kind must be pv_call");
  return price(req);
}

double cdf(const CharacteristicFunction& cf, double x, const TruncationRange& range, std::size_t n_f) {
  return digital_expectation(sample_digital(cf, range, n_f, false), x).expectation;
}

std::vector<double> pdf(const CharacteristicFunction& cf, std::span<const double> grid,
                        const TruncationRange& range, std::size_t n) {
  range.validate();
  const double x_c = range.half_width();
  const std::size_t half = n / 2;
  std::vector<cplx> kappas(half);
  for (std::size_t j = 0; j < half; ++j) kappas[j] = static_cast<double>(j + 1) / (2.0 * x_c);
  const std::vector<cplx> f = cf.evaluate(kappas);
  std::vector<double> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double acc = 0.5;
      for (std::size_t j = 0; j < half; ++j) {
        const double arg = -kTwoPi * kappas[j].real() * grid[i];
        acc += f[j].real() * std::cos(arg) - f[j].imag() * std::sin(arg);
      }
      out[i] = acc / x_c;
    }
  }, 64);
  return out;
}

}  // namespace sinc
