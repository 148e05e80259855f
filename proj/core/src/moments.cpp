#include "sinc/moments.hpp"

#include <algorithm>
#include <cmath>

namespace sinc {
namespace {

constexpr double kEarlyStop = 1e-14;
constexpr std::size_t kEarlyStopRun = 3;
constexpr std::size_t kChunk = 256;

}  // namespace

MomentSet moments_from_cf(const CharacteristicFunction& cf, double x_c, std::size_t n_terms) {
  if (n_terms == 0) throw DomainError("moments: N_terms must be >= 1");
  if (!(x_c > 0.0)) throw DomainError("moments: X_c must be > 0");
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  std::size_t small_run = 0;
  std::size_t used = 0;
  // CF samples are drawn in chunks so the early stop avoids needless evaluations.
  for (std::size_t start = 1; start <= n_terms && small_run < kEarlyStopRun; start += kChunk) {
    const std::size_t len = std::min(kChunk, n_terms - start + 1);
    std::vector<cplx> kappas(len);
    for (std::size_t i = 0; i < len; ++i) kappas[i] = static_cast<double>(start + i) / (2.0 * x_c);
    const std::vector<cplx> f = cf.evaluate(kappas);
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t n = start + i;
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      const double t = static_cast<double>(n) * kPi;
      const double t2 = t * t;
      const double corr = 1.0 - 6.0 / t2;
      const double a1 = f[i].imag() * sign / t;
      const double a2 = f[i].real() * sign / t2;
      const double a3 = f[i].imag() * sign / t * corr;
      const double a4 = f[i].real() * sign / t2 * corr;
      s1 += a1;
      s2 += a2;
      s3 += a3;
      s4 += a4;
      used = n;
      const double biggest = std::max({std::abs(a1), std::abs(a2), std::abs(a3), std::abs(a4)});
      small_run = biggest < kEarlyStop ? small_run + 1 : 0;
      if (small_run >= kEarlyStopRun) break;
    }
  }
  MomentSet ms;
  ms.x_c = x_c;
  ms.n_terms = used;
  const double x2 = x_c * x_c;
  ms.m1 = -2.0 * x_c * s1;
  ms.m2 = x2 / 3.0 + 4.0 * x2 * s2;
  ms.m3 = -2.0 * x2 * x_c * s3;
  ms.m4 = x2 * x2 / 5.0 + 8.0 * x2 * x2 * s4;
  const double m1 = ms.m1, m2 = ms.m2, m3 = ms.m3, m4 = ms.m4;
  ms.c1 = m1;
  ms.c2 = m2 - m1 * m1;
  ms.c3 = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
  ms.c4 = m4 - 4.0 * m3 * m1 - 3.0 * m2 * m2 + 12.0 * m2 * m1 * m1 - 6.0 * m1 * m1 * m1 * m1;
  return ms;
}

TruncationRange trunc_rule_range(const CharacteristicFunction& cf, double L, double x_c_probe,
                                 std::size_t n_terms) {
  if (!(L > 0.0)) throw DomainError("trunc_rule: L must be > 0");
  const MomentSet ms = moments_from_cf(cf, x_c_probe, n_terms);
  const double c4 = std::max(ms.c4, 0.0);
  const double disc = ms.c2 + std::sqrt(c4);
  if (!(disc > 0.0)) throw NumericError("trunc_rule: c2 + sqrt(c4) is not positive");
  const double half = L * std::sqrt(disc);
  TruncationRange r{ms.c1 - half, ms.c1 + half};
  r.validate();
  return r;
}

}  // namespace sinc
