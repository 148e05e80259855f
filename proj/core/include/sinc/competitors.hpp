#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sinc/characteristic_function.hpp"
#include "sinc/fft.hpp"
#include "sinc/sinc.hpp"
#include "sinc/types.hpp"

namespace sinc {

struct CosConfig {
  std::size_t n_f = 128;                 // cosine terms, one CF evaluation each
  std::optional<TruncationRange> range;  // find_truncation when empty and L unset
  std::optional<double> L;               // cumulant rule multiplier, used when range is empty
};

/// Range used by a COS config: explicit range, cumulant rule, or the cutting rule.
TruncationRange resolve_cos_range(const CharacteristicFunction& cf, const CosConfig& cfg);

/// Fourier-cosine prices on [x_l, x_h]. Both digital legs of a PV price share
/// the same N_F samples. Strikes outside the interval get the limit values.
std::vector<double> cos_prices(const CharacteristicFunction& cf, const MarketSpec& m,
                               std::span<const double> strikes, PayoffKind kind,
                               const CosConfig& cfg);
double cos_price(const CharacteristicFunction& cf, const MarketSpec& m, double strike,
                 PayoffKind kind, const CosConfig& cfg);
double cos_put(const CharacteristicFunction& cf, const MarketSpec& m, double strike,
               const CosConfig& cfg);

struct LewisConfig {
  std::size_t n = 4096;  // grid size, equal to the CF evaluation count
  double beta = 1.0;     // eta = 1 / (2 X_c beta)
  double x_c = 1.0;
  double epsilon = 1.0;  // strike-spacing multiplier; < 1 selects the frFFT

  double eta() const { return 1.0 / (2.0 * x_c * beta); }
  void validate() const;
};

struct CarrMadanConfig {
  std::size_t n = 4096;
  double beta = 1.0;
  double x_c = 1.0;
  double alpha_cm = 0.4;
  double epsilon = 1.0;
  bool simpson = false;

  double eta() const { return 1.0 / (2.0 * x_c * beta); }
  void validate() const;
};

/// Lewis call prices on the grid k_v = -b + gamma v (times epsilon for the
/// frFFT), gamma = 2 pi / (N eta). `kind` selects calls or parity puts.
SmileResult lewis_fft(const CharacteristicFunction& cf, const MarketSpec& m,
                      const LewisConfig& cfg, PayoffKind kind = PayoffKind::PvCall);
SmileResult lewis_call_fft(const CharacteristicFunction& cf, const MarketSpec& m,
                           const LewisConfig& cfg);

/// Damped-call transform on the same grid machinery.
SmileResult carr_madan_fft(const CharacteristicFunction& cf, const MarketSpec& m,
                           const CarrMadanConfig& cfg, PayoffKind kind = PayoffKind::PvCall);
SmileResult carr_madan_call_fft(const CharacteristicFunction& cf, const MarketSpec& m,
                                const CarrMadanConfig& cfg);

}  // namespace sinc
