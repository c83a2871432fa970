// Parallel kernels against their serial references on series of a realistic
// size (22 years of daily data).

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "vbpbb/kernels.hpp"
#include "vbpbb/kz.hpp"

using namespace vbpbb;

namespace {

constexpr std::size_t kDays = 8035;

const std::vector<double>& series() {
  static const std::vector<double> x = [] {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> d;
    std::vector<double> v(kDays);
    for (std::size_t t = 0; t < v.size(); ++t) v[t] = std::cos(2.0 * M_PI * static_cast<double>(t) / 7.0) + d(rng);
    return v;
  }();
  return x;
}

std::vector<std::complex<double>> kzft_kernel(std::size_t m, std::size_t k, double v) {
  const auto c = kz_coefficients(m, k);
  const auto h = static_cast<std::int64_t>(c.half_width());
  std::vector<std::complex<double>> kernel(c.size());
  for (std::int64_t u = -h; u <= h; ++u)
    kernel[static_cast<std::size_t>(u + h)] = c(u) * std::polar(1.0, -2.0 * M_PI * v * static_cast<double>(u));
  return kernel;
}

void BM_DftPower_Parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::dft_power(series()));
}

void BM_DftPower_Reference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::dft_power(series()));
}

void BM_Kzft_Parallel(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto kernel = kzft_kernel(m, 2, 1.0 / 7.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::correlate_valid(series(), kernel));
}

void BM_Kzft_Reference(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::kzft_iterated(series(), m, 2, 1.0 / 7.0));
}

void BM_BootstrapMeans_Parallel(benchmark::State& state) {
  const PhasePartition part(kDays, static_cast<std::size_t>(state.range(0)));
  const std::size_t B = 500;
  std::vector<double> out(B * part.period());
  for (auto _ : state) {
    kernels::bootstrap_means(series(), part, 42, B, out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * B * kDays));
}

void BM_BootstrapMeans_Reference(benchmark::State& state) {
  const PhasePartition part(kDays, static_cast<std::size_t>(state.range(0)));
  const std::size_t B = 500;
  std::vector<double> out(B * part.period());
  for (auto _ : state) {
    kernels::reference::bootstrap_means(series(), part, 42, B, out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * B * kDays));
}

}  // namespace

BENCHMARK(BM_DftPower_Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DftPower_Reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Kzft_Parallel)->Arg(37)->Arg(1461)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Kzft_Reference)->Arg(37)->Arg(1461)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BootstrapMeans_Parallel)->Arg(7)->Arg(365)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BootstrapMeans_Reference)->Arg(7)->Arg(365)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
