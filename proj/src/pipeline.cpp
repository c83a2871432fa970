#include "vbpbb/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vbpbb/error.hpp"

namespace vbpbb {

std::uint64_t component_stream(std::uint64_t master_seed, const std::string& label) {
  return derive_seed(master_seed, label_key(label));
}

std::uint64_t comparator_stream(std::uint64_t master_seed, const std::string& label) {
  return derive_seed(master_seed, label_key("gsbb/" + label));
}

std::vector<double> ComponentResult::replicate(std::size_t b) const {
  StreamRng rng(derive_seed(stream_seed, b));
  return pbb_resample(std::span<const double>(filtered.real_values), partition, rng);
}

BootstrapEnsemble ComponentResult::ensemble() const {
  return bootstrap_ensemble(filtered.real_values, partition, replicates, stream_seed);
}

namespace {

void validate(const ComponentSpec& spec) {
  if (spec.frequency.num <= 0 || spec.frequency.value() > 0.5)
    throw InvalidInput("component '" + spec.label + "': frequency must lie in (0, 1/2]");
  if (spec.k == 0) throw InvalidInput("component '" + spec.label + "': k must be positive");
  if (spec.fundamental_period() == 0)
    throw InvalidInput("component '" + spec.label + "': period must be positive");
}

void validate(const BootstrapSettings& boot) {
  if (boot.replicates < 2) throw InvalidInput("at least two bootstrap replicates are required");
  if (!(boot.level > 0.0 && boot.level < 1.0)) throw InvalidInput("confidence level must lie in (0, 1)");
}

std::size_t offset_for(std::int64_t first_day, const BootstrapSettings& boot, std::size_t period) {
  return boot.phase_anchor ? phase_offset(first_day, *boot.phase_anchor, period) : 0;
}

FilteredComponent filter_with(const TimeSeries& ts, const ComponentSpec& spec, std::size_t m,
                              const char* stage) {
  const std::size_t p = spec.fundamental_period();
  const std::size_t required = spec.k * (m - 1) + p;
  if (ts.size() < required)
    throw InsufficientData("component '" + spec.label + "': KZFT m=" + std::to_string(m) +
                               ", k=" + std::to_string(spec.k) + " with period " + std::to_string(p) +
                               stage,
                           required);
  return kzft_apply(ts, {m, spec.k, spec.frequency.value()});
}

}  // namespace

ComponentResult vbpbb_component(const TimeSeries& ts, const ComponentSpec& spec,
                                const BootstrapSettings& boot, const FilterSettings& filter) {
  validate(spec);
  validate(boot);

  ComponentResult r;
  r.spec = spec;
  r.window.k = spec.k;
  if (spec.m) {
    r.window.m = *spec.m;
  } else {
    const Rational neighbor = filter.neighbor.value_or(Rational{0, 1});
    r.window.m_star = window_bound(spec.frequency, neighbor);
    r.window.m = select_window(spec.frequency, neighbor);
    r.window.auto_selected = true;
  }

  r.filtered = filter_with(ts, spec, r.window.m, "");
  r.leakage = leakage_check(r.filtered, filter.leakage_threshold);
  if (!r.leakage.pass && r.window.auto_selected) {
    r.window.m = widen_window(*r.window.m_star);
    r.window.widened = true;
    r.filtered = filter_with(ts, spec, r.window.m, " after widening");
    r.leakage = leakage_check(r.filtered, filter.leakage_threshold);
  }

  const std::size_t p = spec.fundamental_period();
  r.partition = PhasePartition(r.filtered.size(), p, offset_for(r.filtered.valid_start, boot, p));
  r.stream_seed = component_stream(boot.seed, spec.label);
  r.replicates = boot.replicates;

  const auto means = bootstrap_means(r.filtered.real_values, r.partition, boot.replicates, r.stream_seed);
  const auto point = periodic_mean(r.filtered.real_values, r.partition);
  r.band = ci_band(means, point, boot.level);
  r.significant = is_significant(r.band);
  return r;
}

ComparatorResult gsbb_component(const TimeSeries& ts, const ComponentSpec& spec,
                                const BootstrapSettings& boot) {
  validate(spec);
  validate(boot);
  const std::size_t p = spec.fundamental_period();
  if (ts.size() < p)
    throw InsufficientData("component '" + spec.label + "': comparator with period " + std::to_string(p), p);

  ComparatorResult r;
  r.label = spec.label;
  r.partition = PhasePartition(ts.size(), p, offset_for(ts.start_index(), boot, p));
  r.stream_seed = comparator_stream(boot.seed, spec.label);
  r.replicates = boot.replicates;
  const auto means = bootstrap_means(ts.values(), r.partition, boot.replicates, r.stream_seed);
  const auto point = periodic_mean(ts.values(), r.partition);
  r.band = ci_band(means, point, boot.level);
  r.significant = is_significant(r.band);
  return r;
}

CombinedResult vmbpbb_aggregate(std::span<const ComponentResult> results, bool only_significant,
                                std::optional<std::int64_t> phase_anchor) {
  std::vector<const ComponentResult*> members;
  for (const auto& r : results)
    if (!only_significant || r.significant) members.push_back(&r);
  if (members.empty()) throw InvalidInput("aggregation needs at least one included component");

  CombinedResult c;
  c.valid_start = members.front()->filtered.valid_start;
  c.valid_end = members.front()->filtered.valid_end;
  const std::size_t replicates = members.front()->replicates;
  const double level = members.front()->band.level;
  std::size_t lcm = 1;
  std::size_t largest = 1;
  for (const auto* r : members) {
    if (r->replicates != replicates) throw InvalidInput("components have different replicate counts");
    c.labels.push_back(r->spec.label);
    c.valid_start = std::max(c.valid_start, r->filtered.valid_start);
    c.valid_end = std::min(c.valid_end, r->filtered.valid_end);
    const std::size_t p = r->spec.fundamental_period();
    lcm = std::lcm(lcm, p);
    largest = std::max(largest, p);
  }
  if (c.valid_end <= c.valid_start) throw InvalidInput("included components have disjoint valid ranges");

  const auto length = static_cast<std::size_t>(c.valid_end - c.valid_start);
  c.lcm_period = lcm;
  std::size_t period = lcm;
  if (lcm > length) {
    period = largest;
    c.period_capped = true;
  }
  if (length < period)
    throw InsufficientData("combined band over a common range of " + std::to_string(length) + " days", period);

  const std::size_t offset = phase_anchor ? phase_offset(c.valid_start, *phase_anchor, period) : 0;
  const PhasePartition partition(length, period, offset);

  auto shift_of = [&](const ComponentResult* r) {
    return static_cast<std::size_t>(c.valid_start - r->filtered.valid_start);
  };

  c.point_series.assign(length, 0.0);
  for (const auto* r : members) {
    const std::size_t shift = shift_of(r);
    for (std::size_t t = 0; t < length; ++t) c.point_series[t] += r->filtered.real_values[shift + t];
  }

  c.ensemble = BootstrapEnsemble{replicates, length, period, offset, 0,
                                 std::vector<double>(replicates * length, 0.0)};
  const auto count = static_cast<std::int64_t>(replicates);
#pragma omp parallel for schedule(static)
  for (std::int64_t bb = 0; bb < count; ++bb) {
    const auto b = static_cast<std::size_t>(bb);
    double* row = c.ensemble.data.data() + b * length;
    for (const auto* r : members) {
      const auto rep = r->replicate(b);
      const std::size_t shift = shift_of(r);
      for (std::size_t t = 0; t < length; ++t) row[t] += rep[shift + t];
    }
  }

  const auto point = periodic_mean(c.point_series, partition);
  c.band = ci_band(c.ensemble, point, level);
  c.significant = is_significant(c.band);
  return c;
}

std::optional<Rational> nearest_neighbor(const Rational& v, std::span<const ComponentSpec> all) {
  std::optional<Rational> best;
  double best_gap = 0.0;
  for (const auto& other : all) {
    if (other.frequency == v) continue;
    const double gap = std::abs(other.frequency.value() - v.value());
    if (!best || gap < best_gap) {
      best = other.frequency;
      best_gap = gap;
    }
  }
  return best;
}

namespace {

template <class F>
auto with_label(const std::string& label, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InsufficientData& e) {
    throw InsufficientData(label + ": " + e.what(), e.required());
  } catch (const InvalidInput& e) {
    throw InvalidInput(label + ": " + e.what());
  }
}

}  // namespace

AnalysisReport analyze(const TimeSeries& input, const AnalysisConfig& config) {
  validate(config.bootstrap);
  AnalysisReport report;
  report.series = input;
  if (config.detrend && input.size() >= 2) {
    report.trend = fit_linear_trend(input);
    report.series = detrend(input, report.trend);
    report.detrended = true;
  }

  const TimeSeries& series = report.series;
  report.periodogram = periodogram(series);
  if (config.peak_count > 0) {
    std::vector<double> excluded;
    for (const auto& c : config.components) excluded.push_back(c.frequency.value());
    report.peaks = top_peaks(report.periodogram, config.peak_count, excluded,
                             config.exclusion_radius_bins / static_cast<double>(series.size()));
    if (report.peaks.incomplete)
      report.notes.push_back("only " + std::to_string(report.peaks.entries.size()) +
                             " eligible periodogram peaks found");
  }

  for (const auto& spec : config.components) {
    ComponentRow row;
    FilterSettings filter;
    filter.leakage_threshold = config.leakage_threshold;
    filter.neighbor = nearest_neighbor(spec.frequency, config.components);
    row.vbpbb = with_label(spec.label, [&] { return vbpbb_component(series, spec, config.bootstrap, filter); });
    if (row.vbpbb.window.widened)
      report.notes.push_back(spec.label + ": leakage above threshold, window widened to m=" +
                             std::to_string(row.vbpbb.window.m));
    if (!row.vbpbb.leakage.pass)
      report.notes.push_back(spec.label + ": leakage check failed at m=" + std::to_string(row.vbpbb.window.m));
    if (config.comparator) {
      row.gsbb = with_label(spec.label, [&] { return gsbb_component(series, spec, config.bootstrap); });
      if (row.vbpbb.band.mean_width() > 0.0)
        row.width_ratio = band_width_ratio(row.gsbb->band, row.vbpbb.band);
    }
    report.rows.push_back(std::move(row));
  }

  if (config.aggregate && !report.rows.empty()) {
    std::vector<ComponentResult> significant;
    for (const auto& row : report.rows)
      if (row.vbpbb.significant) significant.push_back(row.vbpbb);
    if (significant.empty()) {
      report.notes.push_back("no significant components; combined band not computed");
    } else {
      try {
        report.combined = vmbpbb_aggregate(significant, true, config.bootstrap.phase_anchor);
        if (report.combined->period_capped)
          report.notes.push_back("combined period lcm " + std::to_string(report.combined->lcm_period) +
                                 " exceeds the common range; using " +
                                 std::to_string(report.combined->band.period()));
      } catch (const std::exception& e) {
        report.notes.push_back(std::string("combined band not computed: ") + e.what());
      }
    }
  }
  return report;
}

}  // namespace vbpbb
