#include "sinc/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "sinc/competitors.hpp"
#include "sinc/models.hpp"

namespace sinc {

double chop_decimals(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double y = x * scale;
  const double r = std::round(y);
  // A value that should sit exactly on a boundary may land a hair below it.
  const double chopped = std::abs(y - r) < 1e-6 ? r : std::trunc(y);
  return chopped / scale;
}

Benchmark make_benchmark(double price_a, double price_b) {
  if (!std::isfinite(price_a) || !std::isfinite(price_b))
    throw DomainError("benchmark: prices must be finite");
  Benchmark b;
  b.sources = {price_a, price_b};
  const double diff = std::abs(price_a - price_b);
  int digits = kMaxBenchmarkDigits;
  // Slack for the representation error of the two inputs.
  if (diff > 0.0) digits = static_cast<int>(std::floor(-std::log10(diff) + 1e-6));
  b.digits_retained = std::clamp(digits, 1, kMaxBenchmarkDigits);
  // Symmetric in the two sources: the sum is order independent.
  b.value = chop_decimals(0.5 * (price_a + price_b), b.digits_retained);
  const double scale = std::max(std::abs(price_a), std::abs(price_b));
  b.disagreement_warning = scale > 0.0 && diff / scale > 1e-6;
  return b;
}

const char* to_string(Method m) { return m == Method::Sinc ? "sinc" : "cos"; }

Method method_from_string(const std::string& name) {
  if (name == "sinc") return Method::Sinc;
  if (name == "cos") return Method::Cos;
  throw DomainError("unknown study method '" + name + "'");
}

bool is_star(double price, const Benchmark& bench) {
  const double unit = std::pow(10.0, -bench.digits_retained);
  return std::abs(chop_decimals(price, bench.digits_retained) - bench.value) < 0.5 * unit;
}

ErrorRecord score(double price, const Benchmark& bench) {
  ErrorRecord r;
  r.price = price;
  if (bench.value == 0.0) {
    r.rel_err = std::abs(price);
    r.absolute_fallback = true;
  } else {
    r.rel_err = std::abs(price / bench.value - 1.0);
  }
  if (!std::isfinite(r.rel_err)) r.rel_err = std::numeric_limits<double>::infinity();
  r.star = is_star(price, bench);
  r.above_100pct = r.rel_err > 1.0;
  return r;
}

std::vector<Benchmark> high_precision_benchmarks(const CharacteristicFunction& cf,
                                                 const MarketSpec& market,
                                                 std::span<const double> strikes,
                                                 PayoffKind kind, const TruncationRange& range,
                                                 std::size_t n_f_hi) {
  const bool pv = kind == PayoffKind::PvPut || kind == PayoffKind::PvCall;
  const auto sinc_hi = price_strikes(market, cf, strikes, kind, pv ? 2 * n_f_hi : n_f_hi, range);
  CosConfig cfg;
  cfg.n_f = n_f_hi;
  cfg.range = range;
  const auto cos_hi = cos_prices(cf, market, strikes, kind, cfg);
  std::vector<Benchmark> out;
  out.reserve(strikes.size());
  for (std::size_t i = 0; i < strikes.size(); ++i) out.push_back(make_benchmark(sinc_hi[i].price, cos_hi[i]));
  return out;
}

std::vector<ErrorRecord> convergence_study(const CharacteristicFunction& cf, const StudySetting& s,
                                           std::span<const std::size_t> n_f_list,
                                           std::span<const Method> methods) {
  if (s.benchmarks.size() != s.strikes.size())
    throw DomainError("convergence_study: need one benchmark per strike");
  std::vector<ErrorRecord> out;
  for (const Method method : methods) {
    for (const std::size_t n_f : n_f_list) {
      std::vector<double> prices;
      if (method == Method::Sinc) {
        for (const auto& r : price_strikes(s.market, cf, s.strikes, s.kind, n_f, s.range))
          prices.push_back(r.price);
      } else {
        CosConfig cfg;
        cfg.n_f = n_f;
        cfg.range = s.range;
        prices = cos_prices(cf, s.market, s.strikes, s.kind, cfg);
      }
      for (std::size_t i = 0; i < s.strikes.size(); ++i) {
        ErrorRecord r = score(prices[i], s.benchmarks[i]);
        r.method = method;
        r.kind = s.kind;
        r.strike = s.strikes[i];
        r.n_f = n_f;
        out.push_back(r);
      }
    }
  }
  return out;
}

void write_error_csv(std::ostream& out, std::span<const ErrorRecord> records) {
  out << "method,kind,K,NF,rel_err,star\n";
  for (const auto& r : records) {
    std::ostringstream row;
    row << to_string(r.method) << ',' << to_string(r.kind) << ',' << std::setprecision(10) << r.strike
        << ',' << r.n_f << ',' << std::setprecision(10) << r.rel_err << ',' << (r.star ? 1 : 0);
    out << row.str() << '\n';
  }
}

double implied_vol(double price, const MarketSpec& m, double strike, OptionType type) {
  m.validate();
  if (!(strike > 0.0)) throw DomainError("implied_vol: strike must be > 0");
  if (!std::isfinite(price)) throw DomainError("implied_vol: price must be finite");
  const double cash = strike * m.discount();
  const double asset = m.spot * m.dividend_discount();
  const double lower = type == OptionType::Put ? std::max(cash - asset, 0.0) : std::max(asset - cash, 0.0);
  const double upper = type == OptionType::Put ? cash : asset;
  if (!(price > lower)) {
    std::ostringstream msg;
    msg << "implied_vol: price " << price << " is at or below the lower bound " << lower;
    throw DomainError(msg.str());
  }
  if (!(price < upper)) {
    std::ostringstream msg;
    msg << "implied_vol: price " << price << " is at or above the upper bound " << upper;
    throw DomainError(msg.str());
  }
  // Work with the out-of-the-money side, whose price carries the time value
  // without the intrinsic part.
  OptionType side = type;
  double target = price;
  const bool put_otm = cash < asset;
  if (type == OptionType::Put && !put_otm) {
    side = OptionType::Call;
    target = price + asset - cash;
  } else if (type == OptionType::Call && put_otm) {
    side = OptionType::Put;
    target = price - asset + cash;
  }
  auto f = [&](double s) { return black_scholes_price(m, s, strike, side) - target; };
  double lo = 0.0, hi = 1.0;
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e4) throw NumericError("implied_vol: no volatility bracket found");
  }
  const double tol = 1e-14 * m.spot;
  double sigma = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double v = f(sigma);
    if (std::abs(v) <= tol) return sigma;
    if (v < 0.0) lo = sigma;
    else hi = sigma;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return sigma;
    const double vega = black_scholes_vega(m, sigma, strike);
    double next = vega > 0.0 ? sigma - v / vega : 0.5 * (lo + hi);
    // Newton steps leaving the bracket fall back to bisection.
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    sigma = next;
  }
  return sigma;
}

}  // namespace sinc
