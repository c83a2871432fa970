#pragma once

// Data-parallel inner loops. The `kernels` functions use OpenMP; the
// `kernels::reference` functions are plain serial versions kept to check them.
// Every parallel kernel writes disjoint outputs and sums in a fixed order, so
// results do not depend on the thread count.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vbpbb/bootstrap.hpp"

namespace vbpbb::kernels {

/// (1/n)|sum_t x_t exp(-i 2 pi j t / n)|^2 for j = 1..n/2.
std::vector<double> dft_power(std::span<const double> x);

/// out[i] = sum_u kernel[u] * x[i + u] for i in [0, n - kernel.size()].
std::vector<std::complex<double>> correlate_valid(std::span<const double> x,
                                                  std::span<const std::complex<double>> kernel);

/// Fills out (B x n) with phase-stratified replicates.
void bootstrap_replicates(std::span<const double> source, const PhasePartition& partition,
                          std::uint64_t seed, std::size_t replicates, std::span<double> out);

/// Fills out (B x p) with replicate periodic means.
void bootstrap_means(std::span<const double> source, const PhasePartition& partition,
                     std::uint64_t seed, std::size_t replicates, std::span<double> out);

namespace reference {

/// Direct complex exponential per term.
std::vector<double> dft_power(std::span<const double> x);

/// KZFT computed the long way: demodulate at v, apply k passes of a length-m
/// moving average, remodulate. Returns the valid range only.
std::vector<std::complex<double>> kzft_iterated(std::span<const double> x, std::size_t m,
                                                std::size_t k, double v);

void bootstrap_replicates(std::span<const double> source, const PhasePartition& partition,
                          std::uint64_t seed, std::size_t replicates, std::span<double> out);

void bootstrap_means(std::span<const double> source, const PhasePartition& partition,
                     std::uint64_t seed, std::size_t replicates, std::span<double> out);

}  // namespace reference
}  // namespace vbpbb::kernels
