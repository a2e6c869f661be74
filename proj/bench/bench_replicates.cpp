#include <benchmark/benchmark.h>

#include "mpcr/binomial.hpp"
#include "mpcr/harness.hpp"
#include "mpcr/model.hpp"
#include "mpcr/rng.hpp"

namespace {

mpcr::ModelParams bench_params(int kappa) {
  mpcr::RawParams raw;
  raw.kappa = kappa;
  raw.v = {0.9, 0.2};
  raw.z0 = {1, 1};
  raw.seed = 2024;
  return mpcr::ModelParams::validate(raw);
}

void BM_theorem1_serial(benchmark::State& state) {
  const auto params = bench_params(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto recs = mpcr::harness::run_theorem1(params, 200, mpcr::Execution{false, 1});
    benchmark::DoNotOptimize(recs.data());
  }
}

void BM_theorem1_openmp(benchmark::State& state) {
  const auto params = bench_params(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto recs = mpcr::harness::run_theorem1(params, 200, mpcr::Execution{true, 0});
    benchmark::DoNotOptimize(recs.data());
  }
}

void BM_binomial(benchmark::State& state) {
  mpcr::RngStream rng(1, 0);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mpcr::sample_binomial(n, 0.45, rng));
}

}  // namespace

BENCHMARK(BM_theorem1_serial)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_theorem1_openmp)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_binomial)->Arg(5)->Arg(1000)->Arg(1000000);

BENCHMARK_MAIN();
