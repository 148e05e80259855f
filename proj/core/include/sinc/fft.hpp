#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sinc/characteristic_function.hpp"
#include "sinc/sinc.hpp"
#include "sinc/types.hpp"

namespace sinc {

/// In-place DFT X_m = sum_n x_n e^{-+ i 2 pi m n / N} (sign -1 forward, +1 backward). Any N.
void dft(std::span<cplx> data, int sign = -1);

/// sum_n x_n e^{-i 2 pi n m eps / N} for m in [-N/2, N/2), by the chirp identity
/// (three transforms of size 2N). Output index m + N/2.
std::vector<cplx> fractional_dft_centered(std::span<const cplx> x, double epsilon);

struct FftPlanSpec {
  std::size_t n = 1024;   // frequency slots, power of two
  double x_c = 1.0;       // half-width of the symmetric range
  int a_shift = 0;        // 0 cash leg, 1 asset leg
  double epsilon = 1.0;   // strike spacing multiplier; 1 is the plain FFT grid

  void validate() const;
  /// Strike spacing in log-moneyness, epsilon * 2 X_c / N.
  double spacing() const { return epsilon * 2.0 * x_c / static_cast<double>(n); }
  /// Log-moneyness of output row i (m = i - N/2).
  double log_moneyness(std::size_t i) const {
    return (static_cast<double>(i) - static_cast<double>(n / 2)) * spacing();
  }
};

using QVector = std::vector<cplx>;

/// q_0 = pi/i, q_n = 2 f(kappa_n - a i/2pi)/n for odd n < N/2, q_{N/2} = 0, the
/// odd n > N/2 filled from conjugate symmetry with kappa_{n-N}; even n are 0.
/// Exactly N/4 CF evaluations.
QVector build_q(const CharacteristicFunction& cf, const FftPlanSpec& plan);

/// Digital expectations Re[(i/2pi) DFT(q)] at k_m = m 2X_c/N, m in [-N/2, N/2).
std::vector<double> fft_digitals(std::span<const cplx> q, const FftPlanSpec& plan);

/// Same with strike spacing compressed by plan.epsilon.
std::vector<double> frfft_digitals(std::span<const cplx> q, const FftPlanSpec& plan);

/// Prices on a strike grid, with the digital expectations they came from
/// kept so that off-grid strikes can be interpolated.
struct SmileResult {
  MarketSpec market;
  PayoffKind kind = PayoffKind::PvPut;
  std::string method;
  std::size_t n_f = 0;
  std::vector<double> strikes;
  std::vector<double> prices;
  std::vector<double> con;  // empty when the method has no digital legs
  std::vector<double> aon;
  std::vector<std::uint32_t> flags;
};

/// FFT (epsilon = 1) or frFFT smile. A PV smile uses N = 2 N_F slots (N/4 CF
/// evaluations per leg); a single digital uses N = 4 N_F.
SmileResult sinc_fft_smile(const CharacteristicFunction& cf, const MarketSpec& market,
                           double x_c, std::size_t n_f, PayoffKind kind, double epsilon = 1.0);

/// Cubic interpolation in log-strike of the digital expectations (or of the
/// prices when there are none), reassembled into prices. Throws DomainError
/// for targets outside the grid.
SmileResult interpolate_strikes(const SmileResult& smile, std::span<const double> targets);

/// Smallest epsilon whose frFFT grid still covers the target log-moneyness set
/// with one grid step to spare on either side.
double frfft_epsilon_for(std::span<const double> log_moneyness, double x_c, std::size_t n);

}  // namespace sinc
