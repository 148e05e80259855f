#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <random>

#include "sinc/models.hpp"
#include "sinc/sinc.hpp"

using namespace sinc;

namespace {

PricingRequest request(const MarketSpec& m, const CharacteristicFunction& cf, double K, PayoffKind kind,
                       std::size_t n_f, std::optional<TruncationRange> range = std::nullopt) {
  PricingRequest r;
  r.market = m;
  r.cf = cf;
  r.strike = K;
  r.kind = kind;
  r.n_f = n_f;
  r.range = range;
  return r;
}

// Gil-Pelaez inversion by quadrature, independent of the sinc series.
double gil_pelaez_cdf(const CharacteristicFunction& cf, double x) {
  boost::math::quadrature::exp_sinh<double> q;
  const double integral = q.integrate([&](double u) {
    const cplx v = std::exp(cplx(0.0, -u * x)) * cf(u / kTwoPi);
    return v.imag() / u;
  });
  return 0.5 - integral / kPi;
}

double quantile(const CharacteristicFunction& cf, double p, double lo, double hi) {
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gil_pelaez_cdf(cf, mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(Truncation, TailsSatisfiedForGaussian) {
  for (double T : {0.01, 0.1, 1.0, 4.0}) {
    const MarketSpec m{1.0, 0.05, 0.0, T};
    const GbmParams g{0.25};
    const auto range = find_truncation(make_gbm_cf(g, m));
    const double sd = g.sigma * std::sqrt(T), mu = -0.5 * sd * sd;
    EXPECT_LT(norm_cdf((range.x_l - mu) / sd), 1e-10);
    EXPECT_GT(norm_cdf((range.x_h - mu) / sd), 1.0 - 1e-10);
    EXPECT_DOUBLE_EQ(range.x_l, -range.x_h);
    // The fixed point sits at four times the farther quantile, up to the 30% stopping tolerance.
    const double q = std::max(std::abs(mu - 6.361340902 * sd), std::abs(mu + 6.361340902 * sd));
    EXPECT_NEAR(range.half_width() / (4.0 * q), 1.0, 0.3);
  }
}

TEST(Truncation, HestonLongMaturityAgainstQuadratureQuantiles) {
  const MarketSpec m{1.0, 0.0, 0.0, 1.0};
  const auto cf = make_heston_cf({}, m);
  const double lo = quantile(cf, 1e-10, -10.0, 0.0);
  const double hi = quantile(cf, 1.0 - 1e-10, 0.0, 10.0);
  const double oracle = 4.0 * std::max(std::abs(lo), std::abs(hi));
  EXPECT_NEAR(find_truncation(cf).half_width() / oracle, 1.0, 0.3) << "quantiles " << lo << " " << hi;
}

TEST(Sinc, GbmPutConvergesToBlackScholes) {
  const MarketSpec m{1.0, 0.1, 0.02, 0.1};
  const GbmParams g{0.25};
  const auto cf = make_gbm_cf(g, m);
  for (double K : {0.7, 0.9, 1.0, 1.2, 1.4}) {
    const auto r = price(request(m, cf, K, PayoffKind::PvPut, 200));
    EXPECT_NEAR(r.price, black_scholes_put(m, g.sigma, K), 1e-14) << "K " << K;
    EXPECT_NEAR(pv_call(request(m, cf, K, PayoffKind::PvCall, 200)).price, black_scholes_call(m, g.sigma, K), 1e-14);
  }
}

TEST(Sinc, DigitalsMatchClosedForms) {
  const MarketSpec m{1.0, 0.03, 0.0, 0.5};
  const GbmParams g{0.3};
  const auto cf = make_gbm_cf(g, m);
  const auto range = find_truncation(cf);
  const double sd = g.sigma * std::sqrt(m.maturity);
  for (double K : {0.8, 1.0, 1.3}) {
    const double k = m.log_moneyness(K);
    const double con = norm_cdf((k + 0.5 * sd * sd) / sd);
    const double aon = norm_cdf((k - 0.5 * sd * sd) / sd);
    EXPECT_NEAR(con_digital(cf, k, range, 400).expectation, con, 1e-14);
    EXPECT_NEAR(aon_digital(cf, k, range, 400).expectation, aon, 1e-14);
    EXPECT_NEAR(cdf(cf, k, range, 400), con, 1e-14);
  }
}

TEST(Sinc, PvSplitsEvaluationsEvenly) {
  const MarketSpec m{1.0, 0.0, 0.0, 1.0};
  const auto cf = make_gbm_cf({0.2}, m);
  EXPECT_THROW(price(request(m, cf, 1.0, PayoffKind::PvPut, 101)), DomainError);
  EXPECT_NO_THROW(price(request(m, cf, 1.0, PayoffKind::ConPut, 101)));
  const auto range = find_truncation(cf);
  const auto pv = price(request(m, cf, 1.0, PayoffKind::PvPut, 60, range));
  const double con = con_digital(cf, m.log_moneyness(1.0), range, 30).expectation;
  const double aon = aon_digital(cf, m.log_moneyness(1.0), range, 30).expectation;
  EXPECT_DOUBLE_EQ(pv.price, assemble_price(m, 1.0, PayoffKind::PvPut, con, aon));
}

TEST(Sinc, StrikesOutsideTheRangeAreClamped) {
  const MarketSpec m{1.0, 0.0, 0.0, 0.1};
  const auto cf = make_gbm_cf({0.2}, m);
  const auto range = TruncationRange::symmetric(1.0);
  const auto deep_itm = price(request(m, cf, 10.0, PayoffKind::PvPut, 64, range));
  EXPECT_TRUE(deep_itm.flags & kFlagClamped);
  EXPECT_DOUBLE_EQ(deep_itm.price, 10.0 - 1.0);
  const auto deep_otm = price(request(m, cf, 0.1, PayoffKind::PvPut, 64, range));
  EXPECT_TRUE(deep_otm.flags & kFlagClamped);
  EXPECT_DOUBLE_EQ(deep_otm.price, 0.0);
}

TEST(Sinc, SmileSharesSamplesAndEqualsSinglePrices) {
  const MarketSpec m{1.0, 0.01, 0.0, 0.25};
  const auto cf = make_heston_cf({}, m);
  const auto range = find_truncation(cf);
  const std::vector<double> ks = {0.8, 0.95, 1.0, 1.1};
  const auto smile = price_strikes(m, cf, ks, PayoffKind::PvPut, 256, range);
  for (std::size_t i = 0; i < ks.size(); ++i)
    EXPECT_NEAR(smile[i].price, price(request(m, cf, ks[i], PayoffKind::PvPut, 256, range)).price, 1e-15);
}

TEST(Sinc, PricesAreMonotoneAndConvexInStrike) {
  // Property: once converged, puts increase and are convex in K.
  const MarketSpec m{1.0, 0.0, 0.0, 1.0};
  const auto cf = make_cgmy_cf({1.0, 5.0, 5.0, 1.5}, m);
  const auto range = find_truncation(cf);
  std::vector<double> ks;
  for (int i = 0; i < 41; ++i) ks.push_back(0.6 + 0.02 * i);
  const auto res = price_strikes(m, cf, ks, PayoffKind::PvPut, 512, range);
  for (std::size_t i = 1; i + 1 < res.size(); ++i) {
    EXPECT_GT(res[i].price, res[i - 1].price);
    EXPECT_GT(res[i + 1].price - 2.0 * res[i].price + res[i - 1].price, -1e-12);
  }
}

TEST(Sinc, DensityReconstruction) {
  const MarketSpec m{1.0, 0.0, 0.0, 0.5};
  const GbmParams g{0.2};
  const auto cf = make_gbm_cf(g, m);
  const auto range = find_truncation(cf);
  std::vector<double> grid;
  for (int i = -20; i <= 20; ++i) grid.push_back(0.02 * i);
  const auto dens = pdf(cf, grid, range, 2048);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(dens[i], lognormal_density(m, g.sigma, grid[i]), 1e-12);
}

TEST(Sinc, PayoffNames) {
  EXPECT_EQ(payoff_kind_from_string("aon"), PayoffKind::AonPut);
  EXPECT_EQ(payoff_kind_from_string("call"), PayoffKind::PvCall);
  EXPECT_THROW(payoff_kind_from_string("straddle"), DomainError);
  EXPECT_THROW(TruncationRange::symmetric(-1.0), DomainError);
}
