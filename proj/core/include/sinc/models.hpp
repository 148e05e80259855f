#pragma once

#include "sinc/characteristic_function.hpp"
#include "sinc/types.hpp"

namespace sinc {

struct GbmParams {
  double sigma = 0.25;
  void validate() const;
};

struct HestonParams {
  double lambda = 1.5768;   // mean-reversion speed
  double eta_vol = 0.5751;  // vol-of-vol
  double v_bar = 0.0398;    // long-run variance
  double v0 = 0.0175;       // initial variance
  double rho = -0.5711;
  void validate() const;
};

struct CgmyParams {
  double C = 1.0;
  double G = 5.0;
  double M = 5.0;
  double Y = 0.5;
  void validate() const;
};

/// Real part of the CF exponent above which cf_heston returns 0 and flags a warning.
inline constexpr double kDefaultExponentCap = 700.0;

/// E[exp(i 2 pi kappa s_T)] for GBM. Entire in kappa.
cplx cf_gbm(const GbmParams& p, const MarketSpec& m, cplx kappa);

/// Heston CF in the rotation-free formulation (no branch-cut crossing). Returns 0
/// and sets *overflowed when the exponent's real part exceeds exponent_cap.
cplx cf_heston(const HestonParams& p, const MarketSpec& m, cplx kappa,
               double exponent_cap = kDefaultExponentCap, bool* overflowed = nullptr);

/// CGMY CF with analytic martingale compensator. Throws DomainError when
/// Im(2 pi kappa) leaves the strip (-M, G).
cplx cf_cgmy(const CgmyParams& p, const MarketSpec& m, cplx kappa);

/// Log of E[exp(i u L_1)] for the CGMY Levy process, u angular. Handles Y = 0 and Y = 1.
cplx cgmy_exponent(const CgmyParams& p, cplx u);

CharacteristicFunction make_gbm_cf(const GbmParams& p, const MarketSpec& m);
CharacteristicFunction make_heston_cf(const HestonParams& p, const MarketSpec& m,
                                      double exponent_cap = kDefaultExponentCap);
CharacteristicFunction make_cgmy_cf(const CgmyParams& p, const MarketSpec& m);

double norm_cdf(double x);
double norm_pdf(double x);

double black_scholes_put(const MarketSpec& m, double sigma, double strike);
double black_scholes_call(const MarketSpec& m, double sigma, double strike);
double black_scholes_price(const MarketSpec& m, double sigma, double strike, OptionType type);
double black_scholes_vega(const MarketSpec& m, double sigma, double strike);

/// Gaussian density of the drift-adjusted log-return under GBM.
double lognormal_density(const MarketSpec& m, double sigma, double s);

}  // namespace sinc
