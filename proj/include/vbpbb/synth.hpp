#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vbpbb/pipeline.hpp"
#include "vbpbb/rational.hpp"
#include "vbpbb/series.hpp"

namespace vbpbb {

struct SynthComponent {
  Rational frequency;
  double amplitude = 1.0;
  double phase = 0.0;  // radians
};

/// value(d) = intercept + slope*t + sum amp*cos(2 pi v d + phase) + N(0, sd^2)
/// where t = d - start_index is the position in the series.
struct SynthSpec {
  std::size_t n = 0;
  std::int64_t start_index = 0;
  double intercept = 0.0;
  double slope = 0.0;
  std::vector<SynthComponent> components;
  double noise_sd = 0.0;
  std::uint64_t seed = 0;
};

TimeSeries generate(const SynthSpec& spec);

/// Analytic periodic mean of one component: entry j is its value on day
/// phase0_day + j, for j = 0..period-1.
std::vector<double> truth_curve(const SynthComponent& c, std::size_t period, std::int64_t phase0_day);

enum class Method { vbpbb, gsbb };
const char* method_name(Method m);

struct CoverageOptions {
  std::size_t trials = 200;
  std::size_t replicates = 500;
  double level = 0.95;
  bool detrend = true;
  double leakage_threshold = 0.05;
  /// Fixed filter window for every component; auto-selected when unset.
  std::optional<std::size_t> m;
  std::size_t k = 2;
};

struct CoverageRow {
  Method method = Method::vbpbb;
  std::string component;
  double mean_coverage = 0.0;
  double mean_width = 0.0;
  double significance_rate = 0.0;
  std::size_t trials = 0;
};

struct CoverageReport {
  std::vector<CoverageRow> rows;

  const CoverageRow* find(Method method, const std::string& component) const;
};

/// Each trial draws a fresh series from stream derive_seed(spec.seed, trial),
/// runs every method on every component and records pointwise coverage of
/// the analytic curve and band width.
CoverageReport coverage_eval(const SynthSpec& spec, std::span<const Method> methods,
                             const CoverageOptions& options);

}  // namespace vbpbb
