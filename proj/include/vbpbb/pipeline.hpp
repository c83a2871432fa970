#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vbpbb/bootstrap.hpp"
#include "vbpbb/kz.hpp"
#include "vbpbb/rational.hpp"
#include "vbpbb/series.hpp"
#include "vbpbb/spectral.hpp"

namespace vbpbb {

/// One periodic component to test. A j-th harmonic of period P is written
/// j/P and is phase-partitioned with the fundamental period P.
struct ComponentSpec {
  std::string label;
  Rational frequency;
  std::size_t period = 0;  // 0 means frequency.den
  std::optional<std::size_t> m;
  std::size_t k = 2;

  std::size_t fundamental_period() const noexcept {
    return period != 0 ? period : static_cast<std::size_t>(frequency.den);
  }
};

struct BootstrapSettings {
  std::size_t replicates = 1000;
  std::uint64_t seed = 0;
  double level = 0.95;
  /// Absolute day index that phase 0 is pinned to. Unset: the first valid
  /// index of whichever series is being resampled.
  std::optional<std::int64_t> phase_anchor;
};

struct FilterSettings {
  double leakage_threshold = 0.05;
  /// Adjacent component frequency for choosing m; zero frequency when unset.
  std::optional<Rational> neighbor;
};

struct WindowChoice {
  std::size_t m = 1;
  std::size_t k = 2;
  bool auto_selected = false;
  bool widened = false;
  std::optional<WindowBound> m_star;
};

struct ComponentResult {
  ComponentSpec spec;
  WindowChoice window;
  FilteredComponent filtered;
  LeakageReport leakage;
  PhasePartition partition{1, 1};
  std::uint64_t stream_seed = 0;
  std::size_t replicates = 0;
  CIBand band;
  bool significant = false;

  /// Replicate b of the filtered component, regenerated from its stream.
  std::vector<double> replicate(std::size_t b) const;
  BootstrapEnsemble ensemble() const;
};

/// Periodic bootstrap of the unfiltered series (the comparator).
struct ComparatorResult {
  std::string label;
  PhasePartition partition{1, 1};
  std::uint64_t stream_seed = 0;
  std::size_t replicates = 0;
  CIBand band;
  bool significant = false;
};

/// Stream seeds, keyed by component label.
std::uint64_t component_stream(std::uint64_t master_seed, const std::string& label);
std::uint64_t comparator_stream(std::uint64_t master_seed, const std::string& label);

/// Filter at the component frequency, check leakage (widening m once when it
/// was auto-selected), bootstrap the real component and band it.
ComponentResult vbpbb_component(const TimeSeries& ts, const ComponentSpec& spec,
                                const BootstrapSettings& boot, const FilterSettings& filter = {});

ComparatorResult gsbb_component(const TimeSeries& ts, const ComponentSpec& spec,
                                const BootstrapSettings& boot);

struct CombinedResult {
  std::vector<std::string> labels;
  std::int64_t valid_start = 0;
  std::int64_t valid_end = 0;
  std::size_t lcm_period = 0;
  bool period_capped = false;
  std::vector<double> point_series;  // sum of the included real components
  BootstrapEnsemble ensemble;
  CIBand band;
  bool significant = false;
};

/// Sums replicate b of every included component over the intersection of
/// their valid ranges and bands the result. The band period is the lcm of
/// the fundamental periods, or the largest of them when the lcm exceeds the
/// common length.
CombinedResult vmbpbb_aggregate(std::span<const ComponentResult> results, bool only_significant,
                                std::optional<std::int64_t> phase_anchor = std::nullopt);

struct AnalysisConfig {
  std::vector<ComponentSpec> components;
  BootstrapSettings bootstrap;
  double leakage_threshold = 0.05;
  bool detrend = true;
  bool comparator = true;
  bool aggregate = true;
  std::size_t peak_count = 10;
  double exclusion_radius_bins = 2.0;
};

struct ComponentRow {
  ComponentResult vbpbb;
  std::optional<ComparatorResult> gsbb;
  std::optional<double> width_ratio;  // GSBB over VBPBB
};

struct AnalysisReport {
  LinearTrend trend;
  bool detrended = false;
  TimeSeries series{std::vector<double>{0.0}};
  Periodogram periodogram;
  PeakList peaks;
  std::vector<ComponentRow> rows;
  std::optional<CombinedResult> combined;
  std::vector<std::string> notes;
};

/// Nearest other configured frequency, for auto window selection.
std::optional<Rational> nearest_neighbor(const Rational& v, std::span<const ComponentSpec> all);

AnalysisReport analyze(const TimeSeries& input, const AnalysisConfig& config);

}  // namespace vbpbb
