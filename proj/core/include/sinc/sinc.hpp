#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sinc/characteristic_function.hpp"
#include "sinc/types.hpp"

namespace sinc {

/// Interval [x_l, x_h] carrying all but a negligible share of the log-return density.
struct TruncationRange {
  double x_l = -1.0;
  double x_h = 1.0;

  static TruncationRange symmetric(double x_c);
  double half_width() const { return 0.5 * (x_h - x_l); }
  double center() const { return 0.5 * (x_h + x_l); }
  bool contains(double x) const { return x > x_l && x < x_h; }
  void validate() const;
};

enum class PayoffKind { PvPut, PvCall, ConPut, AonPut };

const char* to_string(PayoffKind kind);
PayoffKind payoff_kind_from_string(const std::string& name);

/// Bit flags attached to results instead of failing.
enum PriceFlag : std::uint32_t {
  kFlagNone = 0,
  kFlagClamped = 1u << 0,       // strike outside the range; limit value returned
  kFlagIllResolved = 1u << 1,   // digital expectation outside [-0.1, 1.1]
  kFlagCfWarning = 1u << 2,     // the CF flagged at least one evaluation
  kFlagInterpolated = 1u << 3,  // value interpolated from a strike grid
};

struct DigitalPrice {
  double expectation = 0.0;   // E[1{s<k}] or E[e^s 1{s<k}]
  double scaled_price = 0.0;  // K e^{-rT} E[1{s<k}] or S0 e^{-qT} E[e^s 1{s<k}]
  std::uint32_t flags = kFlagNone;
};

struct TruncationOptions {
  double tail_mass = 1e-10;
  double initial_half_width = 8.0;
  std::size_t cdf_terms = 1024;      // starting number of CDF series terms
  std::size_t max_cdf_terms = 1u << 20;
  double relative_tolerance = 0.30;
  std::size_t max_iterations = 50;
};

/// Iterated cutting rule: locate the tail_mass quantiles on the series CDF,
/// set X_c = 4 max(|X_l|, |X_h|) and repeat until X_c moves by less than the
/// relative tolerance. Throws NumericError after max_iterations.
TruncationRange find_truncation(const CharacteristicFunction& cf, const TruncationOptions& opts = {});

/// CF samples at the positive odd frequencies kappa_{2n-1} = (2n-1)/(2 X_c),
/// shifted by -i/(2 pi) for the asset leg. One set serves every strike of a smile.
struct DigitalSamples {
  TruncationRange range;
  bool asset = false;
  std::vector<cplx> values;  // already rotated to the range center
  std::size_t cf_warnings = 0;

  std::size_t terms() const { return values.size(); }
};

DigitalSamples sample_digital(const CharacteristicFunction& cf, const TruncationRange& range,
                              std::size_t n_terms, bool asset);

/// Digital series at drift-adjusted log-moneyness k. Strikes on or outside the
/// range boundary return the limit expectation with kFlagClamped.
DigitalPrice digital_expectation(const DigitalSamples& samples, double k);

/// Unclamped series value, also used for the CDF inside find_truncation.
double digital_series(const DigitalSamples& samples, double k);

DigitalPrice con_digital(const CharacteristicFunction& cf, double k, const TruncationRange& range,
                         std::size_t n_f);
DigitalPrice aon_digital(const CharacteristicFunction& cf, double k, const TruncationRange& range,
                         std::size_t n_f);

struct PricingRequest {
  MarketSpec market;
  CharacteristicFunction cf;
  double strike = 1.0;
  PayoffKind kind = PayoffKind::PvPut;
  /// Total CF evaluations. A PV price splits them evenly between the two
  /// digital legs, so it must be even; a single digital uses all of them.
  std::size_t n_f = 128;
  std::optional<TruncationRange> range;  // found by find_truncation when empty

  void validate() const;
};

struct PriceResult {
  double price = 0.0;
  DigitalPrice con;
  DigitalPrice aon;
  TruncationRange range;
  std::size_t n_f = 0;
  std::uint32_t flags = kFlagNone;
};

PriceResult price(const PricingRequest& req);
PriceResult pv_put(const PricingRequest& req);
PriceResult pv_call(const PricingRequest& req);

/// Prices several strikes from one set of CF samples per leg.
std::vector<PriceResult> price_strikes(const MarketSpec& market, const CharacteristicFunction& cf,
                                       std::span<const double> strikes, PayoffKind kind,
                                       std::size_t n_f, const TruncationRange& range);

/// Assembles a price from digital expectations (shared with the FFT engine).
double assemble_price(const MarketSpec& market, double strike, PayoffKind kind, double con,
                      double aon);

/// P(s_T < x) from the same series as the cash-or-nothing digital, clamped outside the range.
double cdf(const CharacteristicFunction& cf, double x, const TruncationRange& range, std::size_t n_f);

/// Density reconstruction (1/2X_c) sum_{|n|<=N/2} f(kappa_n) e^{-i 2 pi kappa_n x}, real part.
std::vector<double> pdf(const CharacteristicFunction& cf, std::span<const double> grid,
                        const TruncationRange& range, std::size_t n);

}  // namespace sinc
