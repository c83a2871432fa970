#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "vbpbb/bootstrap.hpp"
#include "vbpbb/spectral.hpp"
#include "vbpbb/synth.hpp"

using namespace vbpbb;

TEST(Generate, PureLine) {
  SynthSpec s;
  s.n = 20;
  s.intercept = 2.0;
  s.slope = 0.5;
  const auto ts = generate(s);
  for (std::size_t t = 0; t < 20; ++t) EXPECT_DOUBLE_EQ(ts[t], 2.0 + 0.5 * static_cast<double>(t));
}

TEST(Generate, SingleCosine) {
  SynthSpec s;
  s.n = 50;
  s.components = {{{1, 7}, 2.0, 0.3}};
  const auto ts = generate(s);
  for (std::size_t t = 0; t < 50; ++t)
    EXPECT_NEAR(ts[t], 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(t) / 7.0 + 0.3), 1e-12);
}

TEST(Generate, Deterministic) {
  SynthSpec s;
  s.n = 300;
  s.components = {{{1, 7}, 1.0, 0.0}};
  s.noise_sd = 1.0;
  s.seed = 17;
  const auto a = generate(s), b = generate(s);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  s.seed = 18;
  const auto c = generate(s);
  EXPECT_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));
}

TEST(Generate, PeaksAtComponentFrequencies) {
  SynthSpec s;
  s.n = 8035;
  s.components = {{{1, 7}, 1.0, 0.0}, {{1, 365}, 0.5, 1.0}};
  s.noise_sd = 1.0;
  s.seed = 3;
  const auto peaks = top_peaks(periodogram(generate(s)), 2, {}, 0.0);
  ASSERT_EQ(peaks.entries.size(), 2u);
  std::vector<double> f{peaks.entries[0].frequency, peaks.entries[1].frequency};
  std::sort(f.begin(), f.end());
  EXPECT_NEAR(f[0], 1.0 / 365.0, 1.0 / 8035.0);
  EXPECT_NEAR(f[1], 1.0 / 7.0, 1.0 / 8035.0);
}

TEST(TruthCurve, MatchesNoiselessPeriodicMean) {
  const SynthComponent c{{1, 7}, 1.5, 0.9};
  SynthSpec s;
  s.n = 7000;
  s.start_index = 3;
  s.components = {c};
  const auto ts = generate(s);
  const auto mean = periodic_mean(ts.values(), 7);
  const auto truth = truth_curve(c, 7, ts.start_index());
  for (std::size_t j = 0; j < 7; ++j) EXPECT_NEAR(mean[j], truth[j], 1e-9);
}

TEST(Coverage, NoiselessIsExact) {
  SynthSpec s;
  s.n = 700;
  s.components = {{{1, 7}, 1.0, 0.0}};
  s.seed = 1;
  CoverageOptions o;
  o.trials = 3;
  o.replicates = 50;
  o.m = 7;
  o.detrend = false;
  const std::vector<Method> methods{Method::vbpbb, Method::gsbb};
  const auto report = coverage_eval(s, methods, o);
  for (Method m : methods) {
    const auto* row = report.find(m, "1/7");
    ASSERT_NE(row, nullptr);
    EXPECT_DOUBLE_EQ(row->mean_coverage, 1.0);
    EXPECT_LT(row->mean_width, 1e-9);
    EXPECT_EQ(row->trials, 3u);
  }
}

TEST(Coverage, Deterministic) {
  SynthSpec s;
  s.n = 700;
  s.components = {{{1, 7}, 1.0, 0.0}};
  s.noise_sd = 1.0;
  s.seed = 5;
  CoverageOptions o;
  o.trials = 4;
  o.replicates = 50;
  o.m = 7;
  const std::vector<Method> methods{Method::vbpbb};
  const auto a = coverage_eval(s, methods, o), b = coverage_eval(s, methods, o);
  EXPECT_EQ(a.rows[0].mean_coverage, b.rows[0].mean_coverage);
  EXPECT_EQ(a.rows[0].mean_width, b.rows[0].mean_width);
}
