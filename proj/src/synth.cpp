#include "vbpbb/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "vbpbb/error.hpp"

namespace vbpbb {

TimeSeries generate(const SynthSpec& spec) {
  if (spec.n == 0) throw InvalidInput("synthetic series length must be positive");
  if (spec.noise_sd < 0.0) throw InvalidInput("noise sd must be nonnegative");

  std::mt19937_64 engine(spec.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> values(spec.n);
  for (std::size_t t = 0; t < spec.n; ++t) {
    const double day = static_cast<double>(spec.start_index + static_cast<std::int64_t>(t));
    double v = spec.intercept + spec.slope * static_cast<double>(t);
    for (const auto& c : spec.components)
      v += c.amplitude * std::cos(2.0 * std::numbers::pi * c.frequency.value() * day + c.phase);
    if (spec.noise_sd > 0.0) v += spec.noise_sd * noise(engine);
    values[t] = v;
  }
  return TimeSeries(std::move(values), spec.start_index);
}

std::vector<double> truth_curve(const SynthComponent& c, std::size_t period, std::int64_t phase0_day) {
  std::vector<double> curve(period);
  for (std::size_t j = 0; j < period; ++j) {
    const double day = static_cast<double>(phase0_day + static_cast<std::int64_t>(j));
    curve[j] = c.amplitude * std::cos(2.0 * std::numbers::pi * c.frequency.value() * day + c.phase);
  }
  return curve;
}

const char* method_name(Method m) { return m == Method::vbpbb ? "vbpbb" : "gsbb"; }

const CoverageRow* CoverageReport::find(Method method, const std::string& component) const {
  for (const auto& r : rows)
    if (r.method == method && r.component == component) return &r;
  return nullptr;
}

namespace {

struct Tally {
  double covered = 0.0;
  double phases = 0.0;
  double width = 0.0;
  std::size_t significant = 0;
};

void tally(Tally& acc, const CIBand& band, const std::vector<double>& truth, double amplitude) {
  const double slack = 1e-9 * (1.0 + std::abs(amplitude));
  for (std::size_t j = 0; j < truth.size(); ++j) {
    if (band.lower[j] - slack <= truth[j] && truth[j] <= band.upper[j] + slack) acc.covered += 1.0;
    acc.phases += 1.0;
  }
  acc.width += band.mean_width();
  if (is_significant(band)) ++acc.significant;
}

}  // namespace

CoverageReport coverage_eval(const SynthSpec& spec, std::span<const Method> methods,
                             const CoverageOptions& options) {
  if (options.trials == 0) throw InvalidInput("coverage needs at least one trial");

  std::vector<ComponentSpec> specs;
  for (const auto& c : spec.components) {
    ComponentSpec s;
    s.label = c.frequency.str();
    s.frequency = c.frequency;
    s.m = options.m;
    s.k = options.k;
    specs.push_back(s);
  }

  std::vector<std::vector<Tally>> tallies(methods.size(), std::vector<Tally>(specs.size()));
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(spec.seed, trial);
    SynthSpec trial_spec = spec;
    trial_spec.seed = derive_seed(trial_seed, 0);
    TimeSeries series = generate(trial_spec);
    if (options.detrend) series = detrend(series, fit_linear_trend(series));

    BootstrapSettings boot;
    boot.replicates = options.replicates;
    boot.level = options.level;
    boot.seed = trial_seed;

    for (std::size_t c = 0; c < specs.size(); ++c) {
      const std::size_t p = specs[c].fundamental_period();
      for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        if (methods[mi] == Method::vbpbb) {
          FilterSettings filter;
          filter.leakage_threshold = options.leakage_threshold;
          filter.neighbor = nearest_neighbor(specs[c].frequency, specs);
          const auto r = vbpbb_component(series, specs[c], boot, filter);
          tally(tallies[mi][c], r.band, truth_curve(spec.components[c], p, r.filtered.valid_start),
                spec.components[c].amplitude);
        } else {
          const auto r = gsbb_component(series, specs[c], boot);
          tally(tallies[mi][c], r.band, truth_curve(spec.components[c], p, series.start_index()),
                spec.components[c].amplitude);
        }
      }
    }
  }

  CoverageReport report;
  const auto trials = static_cast<double>(options.trials);
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    for (std::size_t c = 0; c < specs.size(); ++c) {
      const auto& t = tallies[mi][c];
      report.rows.push_back({methods[mi], specs[c].label, t.covered / t.phases, t.width / trials,
                             static_cast<double>(t.significant) / trials, options.trials});
    }
  }
  return report;
}

}  // namespace vbpbb
