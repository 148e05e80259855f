#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sinc {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, or a frequency outside a model's analyticity strip.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An algorithm failed to converge or a solution diverged.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Market data shared by every pricer. Prices are computed on the drift-adjusted
/// log-return s_T = log(S_T / S0) - (r - q) T.
struct MarketSpec {
  double spot = 1.0;
  double rate = 0.0;
  double dividend = 0.0;
  double maturity = 1.0;

  void validate() const {
    if (!(spot > 0.0) || !std::isfinite(spot)) throw DomainError("market: spot must be > 0");
    if (!(maturity > 0.0) || !std::isfinite(maturity)) throw DomainError("market: maturity must be > 0");
    if (!std::isfinite(rate) || !std::isfinite(dividend)) throw DomainError("market: rate and dividend must be finite");
  }

  double drift() const { return (rate - dividend) * maturity; }
  double discount() const { return std::exp(-rate * maturity); }
  double dividend_discount() const { return std::exp(-dividend * maturity); }
  double forward() const { return spot * std::exp(drift()); }

  /// Drift-adjusted log-moneyness k = log(K / S0) - (r - q) T.
  double log_moneyness(double strike) const { return std::log(strike / spot) - drift(); }
  double strike_from_log_moneyness(double k) const { return spot * std::exp(k + drift()); }
};

enum class OptionType { Put, Call };

inline const char* to_string(OptionType t) { return t == OptionType::Put ? "put" : "call"; }

}  // namespace sinc
