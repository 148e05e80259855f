#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "sinc/characteristic_function.hpp"
#include "sinc/types.hpp"

namespace sinc {

struct RoughHestonParams {
  double H = 0.05;
  double nu = 0.4;
  double rho = -0.65;

  double alpha() const { return H + 0.5; }
  void validate() const;
};

/// Piecewise-constant, right-continuous forward variance curve xi0(t). Value i
/// applies on [times[i], times[i+1]); the first value also covers t < times[0].
class ForwardVarianceCurve {
 public:
  ForwardVarianceCurve() = default;
  ForwardVarianceCurve(std::vector<double> times, std::vector<double> values);

  static ForwardVarianceCurve flat(double value);
  /// Rows of `time,value`; a non-numeric first line is treated as a header.
  static ForwardVarianceCurve from_csv(std::istream& in);
  static ForwardVarianceCurve from_csv_file(const std::string& path);

  double value(double t) const;
  /// Integral of f(s) xi0(s) over [s0, s1] for f linear between f0 = f(s0) and f1 = f(s1).
  cplx integrate_linear(double s0, double s1, cplx f0, cplx f1) const;

  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

/// Solution of D^alpha h = F(a, h) on the uniform grid t_j = j * dt, j = 0..n.
struct RiccatiSolution {
  cplx a;
  double dt = 0.0;
  std::vector<cplx> h;
  std::vector<cplx> rhs;

  std::size_t steps() const { return h.empty() ? 0 : h.size() - 1; }
  double time(std::size_t j) const { return static_cast<double>(j) * dt; }
};

inline constexpr std::size_t kDefaultRiccatiSteps = 200;
inline constexpr double kDefaultRiccatiCap = 1e10;

/// Right-hand side F(a, h) = -a(a + i)/2 + i a rho nu h + nu^2 h^2 / 2, a angular.
cplx riccati_rhs(const RoughHestonParams& p, cplx a, cplx h);

/// Fractional Adams product-integration scheme. The corrector equation is
/// quadratic in the new value and is solved exactly, which keeps the scheme
/// stable at high frequencies. Throws NumericError naming the time at which
/// |h| exceeds h_cap.
RiccatiSolution solve_fractional_riccati(const RoughHestonParams& p, cplx a, double T,
                                         std::size_t n_steps = kDefaultRiccatiSteps,
                                         double h_cap = kDefaultRiccatiCap);

/// exp( int_0^T F(a, h(a, T - s)) xi0(s) ds ) with a = 2 pi kappa.
cplx cf_rough_heston(const RoughHestonParams& p, const ForwardVarianceCurve& curve,
                     const MarketSpec& m, cplx kappa,
                     std::size_t n_steps = kDefaultRiccatiSteps);

/// CF with a batched evaluator that shares the scheme weights across frequencies.
CharacteristicFunction make_rough_heston_cf(const RoughHestonParams& p,
                                            const ForwardVarianceCurve& curve,
                                            const MarketSpec& m,
                                            std::size_t n_steps = kDefaultRiccatiSteps);

}  // namespace sinc
