#pragma once

#include <array>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sinc/characteristic_function.hpp"
#include "sinc/sinc.hpp"
#include "sinc/types.hpp"

namespace sinc {

inline constexpr int kMaxBenchmarkDigits = 10;

struct Benchmark {
  double value = 0.0;
  int digits_retained = kMaxBenchmarkDigits;  // decimals kept after chopping
  std::array<double, 2> sources{};
  bool disagreement_warning = false;  // sources differ by more than 1e-6 relative
};

/// Average of two high-precision prices, chopped to the decimals they share (at most 10).
Benchmark make_benchmark(double price_a, double price_b);

/// Chops toward zero to `decimals` places, robust to representation error
/// right at a decimal boundary.
double chop_decimals(double x, int decimals);

enum class Method { Sinc, Cos };

const char* to_string(Method m);
Method method_from_string(const std::string& name);

struct ErrorRecord {
  Method method = Method::Sinc;
  PayoffKind kind = PayoffKind::PvPut;
  double strike = 0.0;
  std::size_t n_f = 0;
  double price = 0.0;
  double rel_err = 0.0;        // absolute error when absolute_fallback is set
  bool star = false;           // agrees with every retained benchmark digit
  bool above_100pct = false;
  bool absolute_fallback = false;
};

/// Relative error, or absolute error with the fallback flag for a zero benchmark.
ErrorRecord score(double price, const Benchmark& bench);

/// Star rule: the price chopped to the benchmark's decimals equals the benchmark.
bool is_star(double price, const Benchmark& bench);

/// Benchmarks from the SINC and COS prices at n_f_hi evaluations per leg.
std::vector<Benchmark> high_precision_benchmarks(const CharacteristicFunction& cf,
                                                 const MarketSpec& market,
                                                 std::span<const double> strikes,
                                                 PayoffKind kind, const TruncationRange& range,
                                                 std::size_t n_f_hi);

struct StudySetting {
  MarketSpec market;
  std::vector<double> strikes;
  PayoffKind kind = PayoffKind::PvPut;
  TruncationRange range;
  std::vector<Benchmark> benchmarks;  // one per strike
};

/// Error grid over (method, N_F, strike), sorted by method, N_F, strike.
std::vector<ErrorRecord> convergence_study(const CharacteristicFunction& cf, const StudySetting& s,
                                           std::span<const std::size_t> n_f_list,
                                           std::span<const Method> methods);

/// CSV with header `method,kind,K,NF,rel_err,star`.
void write_error_csv(std::ostream& out, std::span<const ErrorRecord> records);

/// Black-Scholes implied volatility by a safeguarded Newton iteration inside a
/// bisection bracket. Throws DomainError naming the violated no-arbitrage bound.
double implied_vol(double price, const MarketSpec& m, double strike, OptionType type);

}  // namespace sinc
