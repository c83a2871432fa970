#include <cmath>
#include <numbers>

#include "vbpbb/kernels.hpp"

namespace vbpbb::kernels::reference {

std::vector<double> dft_power(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> power(n / 2);
  for (std::size_t j = 1; j <= n / 2; ++j) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t t = 0; t < n; ++t) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) *
                           static_cast<double>(t) / static_cast<double>(n);
      acc += x[t] * std::exp(std::complex<double>(0.0, angle));
    }
    power[j - 1] = std::norm(acc) / static_cast<double>(n);
  }
  return power;
}

std::vector<std::complex<double>> kzft_iterated(std::span<const double> x, std::size_t m,
                                                std::size_t k, double v) {
  const std::size_t n = x.size();
  const std::size_t half = (m - 1) / 2;
  std::vector<std::complex<double>> cur(n);
  for (std::size_t s = 0; s < n; ++s)
    cur[s] = x[s] * std::exp(std::complex<double>(0.0, -2.0 * std::numbers::pi * v * static_cast<double>(s)));

  std::size_t first = 0;  // absolute index of cur[0]
  for (std::size_t pass = 0; pass < k; ++pass) {
    if (cur.size() < m) return {};
    std::vector<std::complex<double>> next(cur.size() - m + 1);
    for (std::size_t i = 0; i < next.size(); ++i) {
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t u = 0; u < m; ++u) acc += cur[i + u];
      next[i] = acc / static_cast<double>(m);
    }
    cur = std::move(next);
    first += half;
  }
  for (std::size_t i = 0; i < cur.size(); ++i) {
    const double t = static_cast<double>(first + i);
    cur[i] *= std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi * v * t));
  }
  return cur;
}

void bootstrap_replicates(std::span<const double> source, const PhasePartition& partition,
                          std::uint64_t seed, std::size_t replicates, std::span<double> out) {
  const std::size_t n = source.size();
  for (std::size_t b = 0; b < replicates; ++b) {
    StreamRng rng(derive_seed(seed, b));
    pbb_resample(source, partition, rng, out.subspan(b * n, n));
  }
}

void bootstrap_means(std::span<const double> source, const PhasePartition& partition,
                     std::uint64_t seed, std::size_t replicates, std::span<double> out) {
  const std::size_t p = partition.period();
  std::vector<double> replicate(source.size());
  for (std::size_t b = 0; b < replicates; ++b) {
    StreamRng rng(derive_seed(seed, b));
    pbb_resample(source, partition, rng, std::span<double>(replicate));
    const auto curve = periodic_mean(replicate, partition);
    std::copy(curve.begin(), curve.end(), out.begin() + static_cast<std::ptrdiff_t>(b * p));
  }
}

}  // namespace vbpbb::kernels::reference
