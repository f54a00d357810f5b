#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "betamodel/datasets.hpp"
#include "betamodel/inference.hpp"
#include "betamodel/kernels.hpp"

using namespace betamodel;

namespace {

std::vector<double> random_beta(std::size_t n) {
  std::mt19937_64 eng(n);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> b(n);
  for (auto& x : b) x = u(eng);
  return b;
}

template <auto Kernel>
void vector_kernel(benchmark::State& state) {
  const auto b = random_beta(static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(b.size());
  for (auto _ : state) {
    Kernel(b, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

template <auto Kernel>
void scalar_kernel(benchmark::State& state) {
  const auto b = random_beta(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(b));
}

template <auto Kernel>
void pair_kernel(benchmark::State& state) {
  const auto b = random_beta(static_cast<std::size_t>(state.range(0)));
  std::vector<double> v(b.size());
  serial::fisher_diagonal(b, v);
  std::vector<double> out(pair_count(b.size()));
  for (auto _ : state) {
    Kernel(b, v, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <auto Kernel>
void sampler(benchmark::State& state) {
  const auto b = random_beta(static_cast<std::size_t>(state.range(0)));
  std::uint64_t rep = 0;
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(b, Seed{1, rep++}));
}

void fit(benchmark::State& state) {
  const auto b = random_beta(static_cast<std::size_t>(state.range(0)));
  const auto d = degrees(sample_graph(BetaVector(b), {2, 0}));
  FitConfig cfg;
  cfg.backend = state.range(1) ? Backend::parallel : Backend::serial;
  for (auto _ : state) benchmark::DoNotOptimize(mle_fit(d, cfg));
}

}  // namespace

#define SIZES ->Arg(100)->Arg(500)->Arg(2000)

BENCHMARK(vector_kernel<serial::fixed_point_sums>) SIZES;
BENCHMARK(vector_kernel<omp::fixed_point_sums>) SIZES;
BENCHMARK(vector_kernel<serial::fisher_diagonal>) SIZES;
BENCHMARK(vector_kernel<omp::fisher_diagonal>) SIZES;
BENCHMARK(scalar_kernel<serial::log_partition>) SIZES;
BENCHMARK(scalar_kernel<omp::log_partition>) SIZES;
BENCHMARK(pair_kernel<serial::pair_statistics>) SIZES;
BENCHMARK(pair_kernel<omp::pair_statistics>) SIZES;
BENCHMARK(sampler<serial::sample_graph>) SIZES;
BENCHMARK(sampler<omp::sample_graph>) SIZES;
BENCHMARK(fit)->Args({300, 0})->Args({300, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
