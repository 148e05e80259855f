#include <gtest/gtest.h>

#include <cmath>

#include "sinc/models.hpp"
#include "sinc/moments.hpp"

using namespace sinc;

TEST(Moments, ShiftedGaussian) {
  const double mu = 0.1, s = 0.3;
  const CharacteristicFunction cf(
      [=](cplx k) { return std::exp(cplx(0.0, kTwoPi * mu) * k - 2.0 * kPi * kPi * s * s * k * k); });
  const auto ms = moments_from_cf(cf, 4.0);
  EXPECT_NEAR(ms.m1, mu, 1e-12);
  EXPECT_NEAR(ms.m2, mu * mu + s * s, 1e-12);
  EXPECT_NEAR(ms.m3, mu * mu * mu + 3 * mu * s * s, 1e-12);
  EXPECT_NEAR(ms.c2, s * s, 1e-12);
  EXPECT_NEAR(ms.c3, 0.0, 1e-12);
  EXPECT_NEAR(ms.c4, 0.0, 1e-11);
  EXPECT_LT(ms.n_terms, kDefaultMomentTerms);
}

TEST(Moments, CgmyCumulantsFromExponentDerivatives) {
  // Cumulants are derivatives of the exponent; a finite-difference oracle is enough here.
  const CgmyParams p{1.0, 5.0, 5.0, 0.5};
  const MarketSpec m{1.0, 0.0, 0.0, 1.0};
  const auto cf = make_cgmy_cf(p, m);
  const double h = 1e-3;
  auto psi = [&](double u) { return std::log(cf(u / kTwoPi)); };
  const double c2 = -(psi(h) - 2.0 * psi(0.0) + psi(-h)).real() / (h * h);
  const auto ms = moments_from_cf(cf, 30.0);
  EXPECT_NEAR(ms.c2, c2, 1e-5);
}

TEST(Moments, TruncRuleAndErrors) {
  const MarketSpec m{1.0, 0.0, 0.0, 1.0};
  const auto cf = make_gbm_cf({0.2}, m);
  const auto r = trunc_rule_range(cf, 12.0, 3.0);
  EXPECT_NEAR(r.half_width(), 12.0 * 0.2, 1e-5);
  EXPECT_THROW(trunc_rule_range(cf, 0.0, 3.0), DomainError);
  EXPECT_THROW(moments_from_cf(cf, -1.0), DomainError);
  EXPECT_THROW(moments_from_cf(cf, 1.0, 0), DomainError);
}
