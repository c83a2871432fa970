#include <cmath>
#include <numbers>

#include "vbpbb/kernels.hpp"

namespace vbpbb::kernels {

std::vector<double> dft_power(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t half = n / 2;
  std::vector<double> power(half);
  if (half == 0) return power;

  // exp(-i 2 pi r / n); the phase index j*t mod n is tracked exactly.
  std::vector<std::complex<double>> twiddle(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    twiddle[r] = {std::cos(angle), std::sin(angle)};
  }

  const auto count = static_cast<std::int64_t>(half);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t jj = 0; jj < count; ++jj) {
    const std::size_t j = static_cast<std::size_t>(jj) + 1;
    double re = 0.0;
    double im = 0.0;
    std::size_t idx = 0;
    for (std::size_t t = 0; t < n; ++t) {
      re += x[t] * twiddle[idx].real();
      im += x[t] * twiddle[idx].imag();
      idx += j;
      if (idx >= n) idx -= n;
    }
    power[j - 1] = (re * re + im * im) / static_cast<double>(n);
  }
  return power;
}

std::vector<std::complex<double>> correlate_valid(std::span<const double> x,
                                                  std::span<const std::complex<double>> kernel) {
  const std::size_t n = x.size();
  const std::size_t len = kernel.size();
  if (len == 0 || len > n) return {};
  const std::size_t out_len = n - len + 1;
  std::vector<std::complex<double>> out(out_len);

  const auto count = static_cast<std::int64_t>(out_len);
#pragma omp parallel for schedule(static)
  for (std::int64_t ii = 0; ii < count; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double re = 0.0;
    double im = 0.0;
    const double* xs = x.data() + i;
    for (std::size_t u = 0; u < len; ++u) {
      re += kernel[u].real() * xs[u];
      im += kernel[u].imag() * xs[u];
    }
    out[i] = {re, im};
  }
  return out;
}

void bootstrap_replicates(std::span<const double> source, const PhasePartition& partition,
                          std::uint64_t seed, std::size_t replicates, std::span<double> out) {
  const std::size_t n = source.size();
  const auto count = static_cast<std::int64_t>(replicates);
#pragma omp parallel for schedule(static)
  for (std::int64_t bb = 0; bb < count; ++bb) {
    const auto b = static_cast<std::size_t>(bb);
    StreamRng rng(derive_seed(seed, b));
    pbb_resample(source, partition, rng, out.subspan(b * n, n));
  }
}

void bootstrap_means(std::span<const double> source, const PhasePartition& partition,
                     std::uint64_t seed, std::size_t replicates, std::span<double> out) {
  const std::size_t n = source.size();
  const std::size_t p = partition.period();
  const auto count = static_cast<std::int64_t>(replicates);
#pragma omp parallel
  {
    std::vector<double> sums(p);
#pragma omp for schedule(static)
    for (std::int64_t bb = 0; bb < count; ++bb) {
      const auto b = static_cast<std::size_t>(bb);
      StreamRng rng(derive_seed(seed, b));
      std::fill(sums.begin(), sums.end(), 0.0);
      for (std::size_t t = 0; t < n; ++t) {
        const std::size_t j = partition.phase_of(t);
        const auto stratum = partition.stratum(j);
        sums[j] += source[stratum[rng.draw(stratum.size())]];
      }
      for (std::size_t j = 0; j < p; ++j)
        out[b * p + j] = sums[j] / static_cast<double>(partition.stratum(j).size());
    }
  }
}

}  // namespace vbpbb::kernels
