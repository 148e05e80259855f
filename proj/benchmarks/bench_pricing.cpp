#include <benchmark/benchmark.h>

#include <vector>

#include "sinc/competitors.hpp"
#include "sinc/fft.hpp"
#include "sinc/models.hpp"
#include "sinc/rough_heston.hpp"
#include "sinc/sinc.hpp"

using namespace sinc;

namespace {

const MarketSpec kMarket{1.0, 0.0, 0.0, 1.0};

std::vector<double> smile_strikes() {
  std::vector<double> k;
  for (int i = 0; i < 21; ++i) k.push_back(0.6 + 0.04 * i);
  return k;
}

void BM_HestonCf(benchmark::State& state) {
  const auto cf = make_heston_cf({}, kMarket);
  std::vector<cplx> ks(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < ks.size(); ++i) ks[i] = 0.01 * static_cast<double>(2 * i + 1);
  for (auto _ : state) benchmark::DoNotOptimize(cf.evaluate(ks));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HestonCf)->Arg(1024);

void BM_RoughHestonCf(benchmark::State& state) {
  const auto cf = make_rough_heston_cf({}, ForwardVarianceCurve::flat(0.0256), kMarket,
                                       static_cast<std::size_t>(state.range(1)));
  std::vector<cplx> ks(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < ks.size(); ++i) ks[i] = 0.02 * static_cast<double>(2 * i + 1);
  for (auto _ : state) benchmark::DoNotOptimize(cf.evaluate(ks));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RoughHestonCf)->Args({256, 100})->Args({256, 200})->Unit(benchmark::kMillisecond);

void BM_SincDirectSmile(benchmark::State& state) {
  const auto cf = make_heston_cf({}, kMarket);
  const auto range = find_truncation(cf);
  const auto ks = smile_strikes();
  for (auto _ : state)
    benchmark::DoNotOptimize(price_strikes(kMarket, cf, ks, PayoffKind::PvPut, state.range(0), range));
}
BENCHMARK(BM_SincDirectSmile)->Arg(256)->Arg(1024)->Arg(4096);

void BM_SincFrfftSmile(benchmark::State& state) {
  const auto cf = make_heston_cf({}, kMarket);
  const double x_c = find_truncation(cf).half_width();
  for (auto _ : state)
    benchmark::DoNotOptimize(sinc_fft_smile(cf, kMarket, x_c, state.range(0), PayoffKind::PvPut, 0.1));
}
BENCHMARK(BM_SincFrfftSmile)->Arg(256)->Arg(1024)->Arg(4096);

void BM_CosSmile(benchmark::State& state) {
  const auto cf = make_heston_cf({}, kMarket);
  CosConfig cfg;
  cfg.n_f = static_cast<std::size_t>(state.range(0));
  cfg.range = find_truncation(cf);
  const auto ks = smile_strikes();
  for (auto _ : state) benchmark::DoNotOptimize(cos_prices(cf, kMarket, ks, PayoffKind::PvPut, cfg));
}
BENCHMARK(BM_CosSmile)->Arg(256)->Arg(1024)->Arg(4096);

void BM_LewisFrfft(benchmark::State& state) {
  const auto cf = make_heston_cf({}, kMarket);
  const double x_c = find_truncation(cf).half_width();
  const LewisConfig cfg{static_cast<std::size_t>(state.range(0)), 1.0, x_c, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(lewis_fft(cf, kMarket, cfg, PayoffKind::PvPut));
}
BENCHMARK(BM_LewisFrfft)->Arg(1024)->Arg(4096);

void BM_FindTruncation(benchmark::State& state) {
  const auto cf = make_cgmy_cf({1.0, 5.0, 5.0, 1.5}, kMarket);
  for (auto _ : state) benchmark::DoNotOptimize(find_truncation(cf));
}
BENCHMARK(BM_FindTruncation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
