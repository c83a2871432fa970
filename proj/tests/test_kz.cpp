#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "vbpbb/error.hpp"
#include "vbpbb/kernels.hpp"
#include "vbpbb/kz.hpp"

using namespace vbpbb;

namespace {

BigInt to_big(unsigned __int128 x) {
  BigInt hi = static_cast<std::uint64_t>(x >> 64);
  return (hi << 64) | BigInt(static_cast<std::uint64_t>(x));
}

std::vector<double> cosine(std::size_t n, double f, double phase = 0.0, std::int64_t t0 = 0) {
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t)
    x[t] = std::cos(2.0 * std::numbers::pi * f * static_cast<double>(t0 + static_cast<std::int64_t>(t)) + phase);
  return x;
}

double mean_square(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s / static_cast<double>(x.size());
}

}  // namespace

TEST(KzCoefficients, SmallExample) {
  const auto c = kz_coefficients(3, 2);
  ASSERT_EQ(c.size(), 5u);
  const double want[] = {1, 2, 3, 2, 1};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(c.values()[i], want[i] / 9.0);
  EXPECT_DOUBLE_EQ(c(0), 3.0 / 9.0);
  EXPECT_DOUBLE_EQ(c(-2), 1.0 / 9.0);
}

TEST(KzCoefficients, MovingAverage) {
  const auto c = kz_coefficients(5, 1);
  for (double w : c.values()) EXPECT_DOUBLE_EQ(w, 0.2);
}

TEST(KzCoefficients, MatchesBruteForceExpansion) {
  for (std::size_t m = 1; m <= 15; m += 2)
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto got = kz_integer_coefficients(m, k);
      const auto want = oracle::kz_polynomial(m, k);
      ASSERT_EQ(got.size(), want.size()) << "m=" << m << " k=" << k;
      for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(got[i], to_big(want[i])) << "m=" << m << " k=" << k;
    }
}

TEST(KzCoefficients, SymmetricWithExactSum) {
  for (std::size_t m = 1; m <= 101; m += 2)
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto a = kz_integer_coefficients(m, k);
      ASSERT_EQ(a.size(), k * (m - 1) + 1);
      BigInt sum = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i], a[a.size() - 1 - i]);
        EXPECT_GT(a[i], 0);
        sum += a[i];
      }
      EXPECT_EQ(sum, boost::multiprecision::pow(BigInt(m), static_cast<unsigned>(k)));
    }
}

TEST(KzCoefficients, LargeWindowStaysNormalised) {
  const auto c = kz_coefficients(2191, 2);
  double sum = 0.0;
  for (double w : c.values()) sum += w;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(c(0), 2191.0 / (2191.0 * 2191.0));
}

TEST(KzCoefficients, RejectsEvenOrZero) {
  EXPECT_THROW(kz_coefficients(4, 2), InvalidInput);
  EXPECT_THROW(kz_coefficients(0, 2), InvalidInput);
  EXPECT_THROW(kz_coefficients(3, 0), InvalidInput);
}

TEST(TransferGain, FixedValues) {
  EXPECT_DOUBLE_EQ(transfer_gain(11, 2, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(transfer_gain(11, 2, 1.0), 1.0);
  EXPECT_NEAR(transfer_gain(5, 2, 0.05), 0.6679288860676675, 1e-15);
  EXPECT_NEAR(transfer_gain(5, 2, 0.2), 0.0, 1e-30);
  for (std::size_t m : {3u, 7u, 29u, 365u}) EXPECT_NEAR(transfer_gain(m, 2, 1.0 / m), 0.0, 1e-20);
}

TEST(TransferGain, BoundedAndSymmetric) {
  for (double d = -0.5; d <= 0.5; d += 0.013) {
    const double g = transfer_gain(9, 3, d);
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, 1.0 + 1e-12);
    EXPECT_NEAR(g, transfer_gain(9, 3, -d), 1e-12);
  }
}

TEST(WindowRules, SelectWindow) {
  EXPECT_EQ(select_window({1, 7}, {1, 30}), 37u);
  EXPECT_EQ(select_window({1, 2}, {1, 4}), 17u);
  EXPECT_EQ(select_window({1, 365}, {2, 365}), 1461u);
  EXPECT_EQ(select_window({1, 365}, {0, 1}), 1461u);
  EXPECT_THROW(select_window({1, 7}, {2, 14}), InvalidInput);
}

TEST(WindowRules, SelectWindowIsOddAndExceedsBound) {
  for (std::int64_t a = 1; a < 20; ++a)
    for (std::int64_t b = 1; b < 20; ++b) {
      const Rational v1{1, a + 1}, v2{1, b + 2};
      if (v1 == v2) continue;
      const auto m = select_window(v1, v2);
      const double bound = 4.0 / std::abs(v1.value() - v2.value());
      EXPECT_EQ(m % 2, 1u);
      EXPECT_GT(static_cast<double>(m), bound - 1e-9);
      EXPECT_LE(static_cast<double>(m), bound + 2.0 + 1e-9);
    }
}

TEST(WindowRules, WidenWindow) {
  EXPECT_EQ(widen_window(1460.0), 2191u);
  EXPECT_EQ(widen_window(4.0), 7u);
  EXPECT_EQ(widen_window(36.52), 55u);
  EXPECT_EQ(widen_window(WindowBound{1460, 1}), 2191u);
  for (double ms = 1.0; ms < 500.0; ms += 3.7) {
    const auto m = widen_window(ms);
    EXPECT_EQ(m % 2, 1u);
    EXPECT_GT(static_cast<double>(m), 1.5 * ms);
    EXPECT_LE(static_cast<double>(m), 1.5 * ms + 2.0);
  }
}

TEST(Kzft, IdentityWithUnitWindow) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> noise;
  std::vector<double> x(40);
  for (auto& v : x) v = noise(rng);
  const auto fc = kzft_apply(TimeSeries(x, 100), {1, 3, 0.0});
  ASSERT_EQ(fc.size(), 40u);
  EXPECT_EQ(fc.valid_start, 100);
  for (std::size_t t = 0; t < x.size(); ++t) {
    EXPECT_NEAR(fc.complex_values[t].real(), x[t], 1e-14);
    EXPECT_NEAR(fc.complex_values[t].imag(), 0.0, 1e-14);
  }
}

TEST(Kzft, EdgeLossAccounting) {
  for (std::size_t m : {3u, 5u, 11u})
    for (std::size_t k : {1u, 2u, 3u}) {
      const std::size_t n = k * (m - 1) + 10;
      const TimeSeries ts(std::vector<double>(n, 1.0), 50);
      const auto fc = kzft_apply(ts, {m, k, 0.1});
      EXPECT_EQ(fc.size(), n - k * (m - 1));
      EXPECT_EQ(fc.valid_start, 50 + static_cast<std::int64_t>(k * (m - 1) / 2));
      EXPECT_EQ(fc.valid_end, ts.end_index() - static_cast<std::int64_t>(k * (m - 1) / 2));
      EXPECT_EQ(fc.real_values.size(), fc.size());
    }
  EXPECT_THROW(kzft_apply(TimeSeries(std::vector<double>(20, 1.0)), {11, 2, 0.1}), InsufficientData);
  EXPECT_THROW(kzft_apply(TimeSeries(std::vector<double>(200, 1.0)), {11, 2, 0.7}), InvalidInput);
}

TEST(Kzft, CenteredCosineHasHalfModulus) {
  const double v = 1.0 / 7.0;
  const auto fc = kzft_apply(TimeSeries(cosine(500, v)), {29, 2, v});
  const auto coeffs = kz_coefficients(29, 2);
  const auto x = cosine(500, v);
  for (std::size_t i = 0; i < fc.size(); i += 37) {
    // Direct convolution sum.
    std::complex<double> want = 0.0;
    const auto h = static_cast<std::int64_t>(coeffs.half_width());
    for (std::int64_t u = -h; u <= h; ++u)
      want += coeffs(u) * std::polar(1.0, -2.0 * std::numbers::pi * v * static_cast<double>(u)) *
              x[static_cast<std::size_t>(static_cast<std::int64_t>(i) + h + u)];
    EXPECT_NEAR(std::abs(fc.complex_values[i] - want), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(fc.complex_values[i]), 0.5, std::sqrt(transfer_gain(29, 2, 2 * v)) + 1e-12);
  }
}

TEST(Kzft, RejectsDcForLargeWindow) {
  const auto fc = kzft_apply(TimeSeries(std::vector<double>(600, 3.0)), {101, 2, 0.2});
  const double bound = 3.0 * std::sqrt(transfer_gain(101, 2, 0.2)) + 1e-12;
  for (const auto& z : fc.complex_values) EXPECT_LE(std::abs(z), bound);
}

TEST(Kzft, PowerFollowsGainLaw) {
  for (std::size_t m : {11u, 51u}) {
    const double v = 0.1;
    for (int i = 0; i < 20; ++i) {
      const double delta = 3.0 / static_cast<double>(m) * i / 19.0;
      const auto x = cosine(8000, v + delta, 0.3);
      const auto fc = kzft_apply(TimeSeries(x), {m, 2, v});
      double out = 0.0;
      for (const auto& z : fc.complex_values) out += std::norm(z);
      out /= static_cast<double>(fc.size());
      const double ratio = out / (mean_square(x) / 2.0);
      EXPECT_NEAR(ratio, transfer_gain(m, 2, delta), 0.02) << "m=" << m << " delta=" << delta;
    }
  }
}

TEST(Kzft, Linear) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> noise;
  std::vector<double> a(300), b(300), s(300);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = noise(rng);
    b[i] = noise(rng);
    s[i] = 2.0 * a[i] - 0.5 * b[i];
  }
  const KzftConfig cfg{7, 2, 0.25};
  const auto fa = kzft_apply(TimeSeries(a), cfg), fb = kzft_apply(TimeSeries(b), cfg);
  const auto fs = kzft_apply(TimeSeries(s), cfg);
  for (std::size_t i = 0; i < fs.size(); ++i)
    EXPECT_NEAR(std::abs(fs.complex_values[i] - (2.0 * fa.complex_values[i] - 0.5 * fb.complex_values[i])), 0.0, 1e-12);
}

TEST(Kzft, ComplexBranchMatchesIteratedRoute) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> noise;
  std::vector<double> x(400);
  for (auto& v : x) v = noise(rng);
  for (std::size_t k : {1u, 2u, 3u}) {
    const auto fc = kzft_apply(TimeSeries(x), {9, k, 1.0 / 7.0});
    const auto ref = kernels::reference::kzft_iterated(x, 9, k, 1.0 / 7.0);
    ASSERT_EQ(ref.size(), fc.size());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(std::abs(ref[i] - fc.complex_values[i]), 0.0, 1e-12);
  }
}

TEST(ReconstructReal, RecoversCosineAmplitudeAndPhase) {
  const double v = 1.0 / 7.0, phase = 0.7;
  const auto x = cosine(2000, v, phase, 30);
  const auto fc = kzft_apply(TimeSeries(x, 30), {29, 2, v});
  const auto re = reconstruct_real(fc);
  double sq = 0.0;
  for (std::size_t i = 0; i < re.size(); ++i) {
    const double want = x[i + fc.config.half_width()];
    sq += (re[i] - want) * (re[i] - want);
  }
  EXPECT_LE(std::sqrt(sq / static_cast<double>(re.size())), 0.02);
  const auto fit = oracle::fit_sinusoid(re, v, static_cast<double>(fc.valid_start));
  EXPECT_NEAR(fit.amplitude, 1.0, 0.02);
  EXPECT_NEAR(std::remainder(fit.phase - phase, 2.0 * std::numbers::pi), 0.0, 0.01);
}

TEST(Leakage, IsolatedToneFromMixturePasses) {
  const std::size_t n = 3000;
  auto x = cosine(n, 1.0 / 7.0);
  const auto y = cosine(n, 1.0 / 30.0);
  for (std::size_t t = 0; t < n; ++t) x[t] += y[t];
  const auto fc = kzft_apply(TimeSeries(x), {select_window({1, 7}, {1, 30}), 2, 1.0 / 7.0});
  const auto report = leakage_check(fc, 0.05);
  EXPECT_TRUE(report.pass);
  EXPECT_FALSE(report.zero_energy);
  EXPECT_NEAR(report.target_frequency, 1.0 / 7.0, 2.0 / static_cast<double>(fc.size()));
  EXPECT_LE(report.max_off_target_power, 0.05 * report.target_power);
}

TEST(Leakage, UndersizedWindowFails) {
  const std::size_t n = 2800;
  auto x = cosine(n, 1.0 / 7.0);
  const auto y = cosine(n, 2.0 / 7.0);
  for (std::size_t t = 0; t < n; ++t) x[t] += y[t];
  const auto fc = kzft_apply(TimeSeries(x), {3, 2, 1.0 / 7.0});
  const auto report = leakage_check(fc, 0.05);
  EXPECT_FALSE(report.pass);
  EXPECT_NEAR(report.max_off_target_frequency, 2.0 / 7.0, 2.0 / static_cast<double>(fc.size()));
}

TEST(Leakage, ZeroSeriesPassesWithFlag) {
  const auto fc = kzft_apply(TimeSeries(std::vector<double>(200, 0.0)), {7, 2, 1.0 / 7.0});
  const auto report = leakage_check(fc, 0.05);
  EXPECT_TRUE(report.pass);
  EXPECT_TRUE(report.zero_energy);
}

TEST(Leakage, ThresholdValidated) {
  const auto fc = kzft_apply(TimeSeries(cosine(200, 0.1)), {7, 2, 0.1});
  EXPECT_THROW(leakage_check(fc, 0.0), InvalidInput);
  EXPECT_THROW(leakage_check(fc, 1.0), InvalidInput);
}
