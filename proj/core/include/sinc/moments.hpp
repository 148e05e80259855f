#pragma once

#include <cstddef>

#include "sinc/characteristic_function.hpp"
#include "sinc/sinc.hpp"

namespace sinc {

/// Raw moments of the log-return truncated to [-X_c, X_c], and the cumulants
/// derived from them.
struct MomentSet {
  double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
  double x_c = 0.0;
  std::size_t n_terms = 0;  // terms actually summed
};

inline constexpr std::size_t kDefaultMomentTerms = 10000;

/// Series in the CF samples at kappa_n = n / (2 X_c). Stops early once three
/// consecutive terms of every series fall below 1e-14 in magnitude.
MomentSet moments_from_cf(const CharacteristicFunction& cf, double x_c,
                          std::size_t n_terms = kDefaultMomentTerms);

/// [c1 - L sqrt(c2 + sqrt(c4)), c1 + L sqrt(c2 + sqrt(c4))]. A slightly negative
/// c4 from series noise is treated as 0; L <= 0 or a negative c2 + sqrt(c4) throws.
TruncationRange trunc_rule_range(const CharacteristicFunction& cf, double L, double x_c_probe,
                                 std::size_t n_terms = kDefaultMomentTerms);

}  // namespace sinc
