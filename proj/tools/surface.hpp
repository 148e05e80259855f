#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "presets.hpp"
#include "sinc/sinc.hpp"

namespace sinc::cli {

/// Strikes grouped by maturity.
struct Surface {
  std::vector<double> maturities;
  std::vector<std::vector<double>> strikes;  // strikes[i] belongs to maturities[i]

  std::size_t size() const;
};

/// Ten maturities from 0.01 to 2.5 years; for each, `per_smile` strikes evenly
/// spaced in log-moneyness over +-0.5 sqrt(T / 2.5) around the forward.
Surface synthetic_surface(const MarketSpec& base, std::size_t per_smile = 21);

/// Rows of `K,T` (a header line is allowed), grouped by maturity.
Surface load_surface_csv(const std::string& path);

enum class SmileMethod { SincFft, SincFrfft, LewisFft, LewisFrfft, CarrMadanFft, CarrMadanFrfft };

SmileMethod smile_method_from(const std::string& method, const std::string& variant);
const char* to_string(SmileMethod m);

/// Per-maturity CFs, truncation ranges and benchmark implied vols.
struct SurfaceContext {
  Surface surface;
  std::vector<MarketSpec> markets;
  std::vector<CharacteristicFunction> cfs;
  std::vector<double> x_c;
  std::vector<std::vector<double>> bench_vols;
};

/// Benchmarks average the direct SINC and COS prices at n_f_bench terms per leg.
SurfaceContext build_surface_context(const ModelSpec& model, const MarketSpec& base,
                                     const Surface& surface, std::size_t n_f_bench);

struct SurfaceError {
  double mean_abs_iv_error = 0.0;
  std::size_t failed_inversions = 0;  // prices outside no-arbitrage bounds, scored as error 1
};

/// Mean absolute implied-vol error over the surface. beta and alpha_cm are
/// used by the Lewis and Carr-Madan methods; epsilon <= 0 picks the smallest
/// fractional parameter whose grid covers each smile.
SurfaceError surface_error(const SurfaceContext& ctx, SmileMethod method, std::size_t n_f,
                           double beta = 1.0, double alpha_cm = 0.4, double epsilon = 0.0);

/// Prices at the requested strikes for one maturity, through a strike grid
/// and linear interpolation.
std::vector<double> smile_prices(const CharacteristicFunction& cf, const MarketSpec& m,
                                 std::span<const double> strikes, double x_c, SmileMethod method,
                                 std::size_t n_f, double beta, double alpha_cm, double epsilon,
                                 PayoffKind kind = PayoffKind::PvPut);

}  // namespace sinc::cli
