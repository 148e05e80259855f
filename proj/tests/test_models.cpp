#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <random>

#include "sinc/models.hpp"

using namespace sinc;

namespace {

const cplx I{0.0, 1.0};

// Heston's original formulation; fine for short maturities where its branch
// cut is not crossed.
cplx heston_original(const HestonParams& p, double T, double u) {
  const cplx b = p.lambda - p.rho * p.eta_vol * I * u;
  const cplx d = std::sqrt(b * b + p.eta_vol * p.eta_vol * (I * u + u * u));
  const cplx g = (b + d) / (b - d);
  const cplx e = std::exp(d * T);
  const cplx D = (b + d) / (p.eta_vol * p.eta_vol) * (1.0 - e) / (1.0 - g * e);
  const cplx C = p.lambda * p.v_bar / (p.eta_vol * p.eta_vol) *
                 ((b + d) * T - 2.0 * std::log((1.0 - g * e) / (1.0 - g)));
  return std::exp(C + D * p.v0);
}

}  // namespace

TEST(Gbm, MatchesGaussianCharacteristicFunction) {
  const MarketSpec m{1.0, 0.05, 0.01, 0.7};
  const GbmParams p{0.3};
  for (double k : {0.0, 0.1, 0.5, 2.0, -1.3}) {
    const double u = kTwoPi * k;
    const double var = p.sigma * p.sigma * m.maturity;
    const cplx expect = std::exp(-0.5 * var * I * u - 0.5 * var * u * u);
    EXPECT_NEAR(std::abs(cf_gbm(p, m, k) - expect), 0.0, 1e-15);
  }
}

TEST(Heston, AgreesWithOriginalFormulationAtShortMaturity) {
  const HestonParams p;
  const MarketSpec m{1.0, 0.0, 0.0, 0.1};
  for (double k : {0.05, 0.3, 1.0, 3.0}) {
    const cplx a = cf_heston(p, m, k);
    // Drift adjustment: the original CF is of log(S_T/S0) with zero rates, so they coincide.
    const cplx b = heston_original(p, m.maturity, kTwoPi * k);
    EXPECT_LT(std::abs(a - b), 1e-13) << "kappa " << k;
  }
}

TEST(Heston, NormalisedAndMartingale) {
  const HestonParams p;
  for (double T : {0.01, 0.1, 1.0, 5.0}) {
    const MarketSpec m{1.0, 0.02, 0.0, T};
    EXPECT_NEAR(std::abs(cf_heston(p, m, 0.0) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(cf_heston(p, m, cplx(0.0, -1.0 / kTwoPi)) - 1.0), 0.0, 1e-13);
  }
}

TEST(Heston, HermitianAndContinuousAlongLongMaturity) {
  const HestonParams p;
  const MarketSpec m{1.0, 0.0, 0.0, 10.0};
  cplx prev = cf_heston(p, m, 0.0);
  for (double k = 0.001; k < 3.0; k += 0.001) {
    const cplx cur = cf_heston(p, m, k);
    EXPECT_LT(std::abs(cur - prev), 0.05) << "jump at kappa " << k;
    EXPECT_LT(std::abs(cf_heston(p, m, -k) - std::conj(cur)), 1e-15);
    prev = cur;
  }
}

TEST(Heston, OverflowGuardFlags) {
  const HestonParams p;
  const MarketSpec m{1.0, 0.0, 0.0, 1.0};
  bool overflowed = false;
  const cplx v = cf_heston(p, m, cplx(0.0, -5.0), 1.0, &overflowed);
  EXPECT_TRUE(overflowed);
  EXPECT_EQ(v, cplx(0.0));
  auto cf = make_heston_cf(p, m, 1.0);
  (void)cf(cplx(0.0, -5.0));
  EXPECT_GE(cf.warnings(), 1u);
}

TEST(Cgmy, ExponentMatchesLevyKhintchineIntegral) {
  // For Y < 1 the exponent is C int_0^inf (e^{iux} - 1) e^{-Mx} x^{-1-Y} dx plus the mirrored negative jumps.
  boost::math::quadrature::exp_sinh<double> q;
  for (double Y : {0.2, 0.5, 0.8}) {
    const CgmyParams p{1.3, 4.0, 7.0, Y};
    for (double u : {0.5, 2.0, 10.0}) {
      auto part = [&](double lam, double sign, bool imag) {
        return q.integrate([&](double x) {
          const cplx v = (std::exp(I * (sign * u * x)) - 1.0) * std::exp(-lam * x) * std::pow(x, -1.0 - Y);
          return imag ? v.imag() : v.real();
        });
      };
      const cplx expect = p.C * cplx(part(p.M, 1.0, false) + part(p.G, -1.0, false),
                                     part(p.M, 1.0, true) + part(p.G, -1.0, true));
      EXPECT_LT(std::abs(cgmy_exponent(p, u) - expect), 1e-9 * std::abs(expect)) << "Y " << Y << " u " << u;
    }
  }
}

TEST(Cgmy, SpecialExponentsAreLimits) {
  for (double Y0 : {0.0, 1.0}) {
    const CgmyParams at{1.0, 5.0, 6.0, Y0};
    const CgmyParams near{1.0, 5.0, 6.0, Y0 + 1e-7};
    for (double u : {0.3, 3.0, 30.0}) {
      const cplx a = cgmy_exponent(at, u);
      EXPECT_LT(std::abs(a - cgmy_exponent(near, u)), 1e-5 * (1.0 + std::abs(a))) << "Y " << Y0;
    }
  }
}

TEST(Cgmy, MartingaleAndStrip) {
  const CgmyParams p{1.0, 5.0, 5.0, 1.5};
  const MarketSpec m{1.0, 0.1, 0.0, 1.0};
  EXPECT_NEAR(std::abs(cf_cgmy(p, m, cplx(0.0, -1.0 / kTwoPi)) - 1.0), 0.0, 1e-12);
  EXPECT_THROW(cf_cgmy(p, m, cplx(0.0, -6.0 / kTwoPi)), DomainError);
  EXPECT_THROW(make_cgmy_cf({1.0, 5.0, 0.5, 0.5}, m), DomainError);
}

TEST(BlackScholes, ParityAndVega) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const MarketSpec m{1.0, 0.1 * u(rng), 0.05 * u(rng), 0.05 + 3.0 * u(rng)};
    const double sigma = 0.05 + u(rng), K = 0.5 + u(rng);
    const double c = black_scholes_call(m, sigma, K), p = black_scholes_put(m, sigma, K);
    EXPECT_NEAR(c - p, m.spot * m.dividend_discount() - K * m.discount(), 1e-14);
    const double h = 1e-5;
    const double fd = (black_scholes_put(m, sigma + h, K) - black_scholes_put(m, sigma - h, K)) / (2 * h);
    EXPECT_NEAR(black_scholes_vega(m, sigma, K), fd, 1e-7);
  }
}

TEST(Params, ValidationRejectsBadValues) {
  EXPECT_THROW(GbmParams{-0.1}.validate(), DomainError);
  HestonParams h;
  h.rho = 1.5;
  EXPECT_THROW(h.validate(), DomainError);
  EXPECT_THROW((CgmyParams{1.0, 5.0, 5.0, 2.0}.validate()), DomainError);
  EXPECT_THROW((MarketSpec{1.0, 0.0, 0.0, 0.0}.validate()), DomainError);
}
