// OpenMP kernels against their serial references.

#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>
#include <omp.h>

#include "pisot/kernels.hpp"
#include "pisot/transform.hpp"

namespace {

std::vector<double> grid(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = 1000.0 + 0.37 * static_cast<double>(i);
  return t;
}

void BM_MuHatBatch(benchmark::State& state) {
  const auto t = grid(static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(t.size());
  for (auto _ : state) {
    pisot::fast::mu_hat_batch(std::numbers::phi, t, 1e-12, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_MuHatBatchSerial(benchmark::State& state) {
  const auto t = grid(static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(t.size());
  for (auto _ : state) {
    pisot::fast::mu_hat_batch_serial(std::numbers::phi, t, 1e-12, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AbsSeries(benchmark::State& state) {
  for (auto _ : state) {
    auto v = pisot::fast::abs_series(std::numbers::phi, 1.0, 1, state.range(0), 1e-12);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AbsSeriesSerial(benchmark::State& state) {
  for (auto _ : state) {
    auto v = pisot::fast::abs_series_serial(std::numbers::phi, 1.0, 1, state.range(0), 1e-12);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MuHatPrecise(benchmark::State& state) {
  const pisot::Real theta = (pisot::Real(1L, 256) + sqrt(pisot::Real(5L, 256))) / 2L;
  const pisot::Real t(12345.678, 256);
  for (auto _ : state) {
    auto m = pisot::mu_hat(theta, t, 1e-20);
    benchmark::DoNotOptimize(m.value.get());
  }
}

}  // namespace

BENCHMARK(BM_MuHatBatch)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_MuHatBatchSerial)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_AbsSeries)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_AbsSeriesSerial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_MuHatPrecise);

BENCHMARK_MAIN();
