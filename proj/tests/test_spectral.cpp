#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "vbpbb/error.hpp"
#include "vbpbb/spectral.hpp"

using namespace vbpbb;

namespace {

std::vector<double> cosine(std::size_t n, double f, double amp = 1.0, double phase = 0.0) {
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t)
    x[t] = amp * std::cos(2.0 * std::numbers::pi * f * static_cast<double>(t) + phase);
  return x;
}

}  // namespace

TEST(Periodogram, GridAndConstantSeries) {
  const auto pg = periodogram(std::vector<double>(101, 4.5));
  ASSERT_EQ(pg.size(), 50u);
  EXPECT_DOUBLE_EQ(pg.frequencies.front(), 1.0 / 101.0);
  EXPECT_DOUBLE_EQ(pg.frequencies.back(), 50.0 / 101.0);
  for (double p : pg.power) EXPECT_NEAR(p, 0.0, 1e-20 + 1e-24 * 101);
}

TEST(Periodogram, SingleCosinePeak) {
  const std::size_t n = 1000;
  const auto x = cosine(n, 10.0 / n);
  const auto pg = periodogram(x);
  const double oracle_power = oracle::dft_power_at(x, 10.0 / n);
  EXPECT_NEAR(oracle_power, n / 4.0, 1e-6 * n / 4.0);
  EXPECT_NEAR(pg.power[9], n / 4.0, 1e-6 * n / 4.0);
  for (std::size_t j = 0; j < pg.size(); ++j)
    if (j != 9) EXPECT_LT(pg.power[j], 1e-9);
}

TEST(Periodogram, TwoCosinePowerRatio) {
  const std::size_t n = 1000;
  auto x = cosine(n, 5.0 / n, 1.0);
  const auto y = cosine(n, 50.0 / n, 2.0);
  for (std::size_t t = 0; t < n; ++t) x[t] += y[t];
  const auto pg = periodogram(x);
  const double expected = oracle::dft_power_at(x, 50.0 / n) / oracle::dft_power_at(x, 5.0 / n);
  EXPECT_NEAR(expected, 4.0, 1e-9);
  EXPECT_NEAR(pg.power[49] / pg.power[4], 4.0, 1e-9);
}

TEST(Periodogram, NeedsFourPoints) {
  EXPECT_THROW(periodogram(std::vector<double>{1, 2, 3}), InsufficientData);
}

TEST(Periodogram, ParsevalAndShiftInvariance) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> noise;
  for (std::size_t n : {4u, 5u, 64u, 257u, 1000u}) {
    std::vector<double> x(n), shifted(n);
    double sumsq = 0.0, mean = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      x[t] = noise(rng);
      shifted[t] = x[t] + 7.5;
      mean += x[t];
    }
    mean /= static_cast<double>(n);
    for (double v : x) sumsq += (v - mean) * (v - mean);

    const auto pg = periodogram(x);
    double total = 0.0;
    for (double p : pg.power) total += p;
    // Parseval over the full DFT: sum_{j=1}^{n-1} P_j = sum (x - mean)^2.
    // The one-sided grid counts each pair once and Nyquist once.
    const double nyquist = n % 2 == 0 ? pg.power.back() : 0.0;
    EXPECT_NEAR(2.0 * total - nyquist, sumsq, 1e-9 * sumsq);
    EXPECT_LE(total, sumsq + 1e-9);

    const auto ps = periodogram(shifted);
    for (std::size_t j = 0; j < pg.size(); ++j) EXPECT_NEAR(ps.power[j], pg.power[j], 1e-9 * (1.0 + pg.power[j]));
  }
}

TEST(TopPeaks, SingleCosine) {
  const std::size_t n = 500;
  const auto pg = periodogram(cosine(n, 25.0 / n));
  const auto peaks = top_peaks(pg, 1, {}, 0.0);
  ASSERT_EQ(peaks.entries.size(), 1u);
  EXPECT_DOUBLE_EQ(peaks.entries[0].frequency, 25.0 / n);
  EXPECT_EQ(peaks.entries[0].bin, 25u);
}

TEST(TopPeaks, ExclusionForcesNextBin) {
  const std::size_t n = 500;
  auto x = cosine(n, 25.0 / n);
  const auto y = cosine(n, 80.0 / n, 0.3);
  for (std::size_t t = 0; t < n; ++t) x[t] += y[t];
  const auto pg = periodogram(x);
  const std::vector<double> excluded{25.0 / n};
  const auto peaks = top_peaks(pg, 1, excluded, 2.0 / n);
  ASSERT_EQ(peaks.entries.size(), 1u);
  EXPECT_DOUBLE_EQ(peaks.entries[0].frequency, 80.0 / n);
}

TEST(TopPeaks, TwoCosinesDescending) {
  const std::size_t n = 600;
  auto x = cosine(n, 30.0 / n, 1.0);
  const auto y = cosine(n, 100.0 / n, 2.0);
  for (std::size_t t = 0; t < n; ++t) x[t] += y[t];
  const auto peaks = top_peaks(periodogram(x), 2, {}, 0.0);
  ASSERT_EQ(peaks.entries.size(), 2u);
  EXPECT_DOUBLE_EQ(peaks.entries[0].frequency, 100.0 / n);
  EXPECT_DOUBLE_EQ(peaks.entries[1].frequency, 30.0 / n);
}

TEST(TopPeaks, WarnsWhenTooFewEligible) {
  const std::size_t n = 16;
  const auto pg = periodogram(cosine(n, 2.0 / n));
  const auto peaks = top_peaks(pg, 50, {}, 0.0);
  EXPECT_TRUE(peaks.incomplete);
  EXPECT_LT(peaks.entries.size(), 50u);
}

TEST(TopPeaks, PropertiesOnNoise) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> noise;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 200 + 37 * static_cast<std::size_t>(trial);
    std::vector<double> x(n);
    for (auto& v : x) v = noise(rng);
    const auto pg = periodogram(x);
    const std::vector<double> excluded{1.0 / 7.0, 2.0 / 7.0, 0.1};
    const double radius = 2.0 / static_cast<double>(n);
    const auto peaks = top_peaks(pg, 10, excluded, radius);
    for (std::size_t i = 0; i < peaks.entries.size(); ++i) {
      const auto& p = peaks.entries[i];
      EXPECT_DOUBLE_EQ(pg.frequencies[p.bin - 1], p.frequency);
      EXPECT_DOUBLE_EQ(pg.power[p.bin - 1], p.power);
      if (i > 0) EXPECT_GE(peaks.entries[i - 1].power, p.power);
      for (double e : excluded) EXPECT_GT(std::abs(p.frequency - e), radius);
      if (p.bin > 1) EXPECT_GE(p.power, pg.power[p.bin - 2]);
      if (p.bin < pg.size()) EXPECT_GE(p.power, pg.power[p.bin]);
    }
  }
}
