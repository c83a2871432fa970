#include "vbpbb/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <omp.h>

#include "vbpbb/config.hpp"
#include "vbpbb/csv_io.hpp"
#include "vbpbb/error.hpp"
#include "vbpbb/report.hpp"
#include "vbpbb/synth.hpp"

#ifndef VBPBB_VERSION
#define VBPBB_VERSION "dev"
#endif

namespace vbpbb::cli {

const char* version() { return "vbpbb " VBPBB_VERSION; }

namespace {

/// Bad flag values found before any data is touched.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
void writing(const std::string& path, std::ostream& stdout_stream, F&& write) {
  if (path.empty() || path == "-") {
    write(stdout_stream);
    return;
  }
  if (auto parent = std::filesystem::path(path).parent_path(); !parent.empty())
    std::filesystem::create_directories(parent);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError(path, 0, 0, "cannot open for writing");
  write(file);
}

Rational rational_flag(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const InvalidInput& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

std::int64_t anchor_day(const std::string& date_text, const std::chrono::year_month_day& first) {
  std::chrono::year_month_day d;
  if (!parse_iso_date(date_text, d)) throw UsageError("anchor date must be YYYY-MM-DD: '" + date_text + "'");
  return day_number(d) - day_number(first);
}

TimeSeries prepared(const TimeSeries& raw, bool skip_detrend) {
  if (skip_detrend || raw.size() < 2) return raw;
  return detrend(raw, fit_linear_trend(raw));
}

void set_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

SynthComponent parse_synth_component(const std::string& text) {
  // freq[:amplitude[:phase]]
  SynthComponent c;
  const auto first = text.find(':');
  c.frequency = rational_flag(text.substr(0, first), "--component");
  try {
    if (first != std::string::npos) {
      const auto second = text.find(':', first + 1);
      c.amplitude = std::stod(text.substr(first + 1, second - first - 1));
      if (second != std::string::npos) c.phase = std::stod(text.substr(second + 1));
    }
  } catch (const std::exception&) {
    throw UsageError("--component expects freq[:amplitude[:phase]], got '" + text + "'");
  }
  return c;
}

struct SynthFlags {
  std::size_t n = 7000;
  double intercept = 0.0;
  double slope = 0.0;
  double noise = 1.0;
  std::uint64_t seed = 0;
  std::vector<std::string> components;

  void attach(CLI::App* app) {
    app->add_option("--n", n, "Series length in days")->check(CLI::PositiveNumber);
    app->add_option("--intercept", intercept, "Trend intercept");
    app->add_option("--slope", slope, "Trend slope per day");
    app->add_option("--noise", noise, "Gaussian noise standard deviation")->check(CLI::NonNegativeNumber);
    app->add_option("--seed", seed, "Master seed");
    app->add_option("--component", components, "Component freq[:amplitude[:phase]], repeatable");
  }

  SynthSpec spec() const {
    SynthSpec s;
    s.n = n;
    s.intercept = intercept;
    s.slope = slope;
    s.noise_sd = noise;
    s.seed = seed;
    for (const auto& c : components) s.components.push_back(parse_synth_component(c));
    return s;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variable bandpass periodic block bootstrap", "vbpbb"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", std::string(version()));
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (never changes results)")->check(CLI::NonNegativeNumber);

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Full pipeline: periodogram, per-component bands, combined band");
  std::string a_input, a_config, a_out, a_anchor;
  std::optional<std::uint64_t> a_seed;
  std::optional<std::size_t> a_replicates;
  bool a_skip_detrend = false, a_no_comparator = false;
  analyze_cmd->add_option("--input", a_input, "Input CSV (date,value or date,count,population)");
  analyze_cmd->add_option("--config", a_config, "Run configuration file")->required();
  analyze_cmd->add_option("--seed", a_seed, "Master seed (overrides config)");
  analyze_cmd->add_option("--B", a_replicates, "Bootstrap replicates (overrides config)");
  analyze_cmd->add_option("--out", a_out, "Output directory");
  analyze_cmd->add_option("--anchor-date", a_anchor, "Date that phase 0 falls on");
  analyze_cmd->add_flag("--skip-detrend", a_skip_detrend, "Do not remove the linear trend");
  analyze_cmd->add_flag("--no-comparator", a_no_comparator, "Skip the unfiltered comparator bootstrap");
  analyze_cmd->add_option("--threads", threads, "OpenMP threads");

  // periodogram
  auto* pg_cmd = app.add_subcommand("periodogram", "Periodogram of the detrended series and its top peaks");
  std::string pg_input, pg_output, pg_peaks_output;
  std::size_t pg_peaks = 10;
  double pg_radius = 2.0;
  std::vector<std::string> pg_exclude;
  bool pg_sqrt = false, pg_skip_detrend = false;
  pg_cmd->add_option("--input", pg_input, "Input CSV")->required();
  pg_cmd->add_option("--output", pg_output, "Grid CSV (frequency,power); stdout when omitted");
  pg_cmd->add_option("--peaks-output", pg_peaks_output, "Peaks CSV (rank,frequency,period_days,power)");
  pg_cmd->add_option("--peaks", pg_peaks, "Number of peaks")->check(CLI::PositiveNumber);
  pg_cmd->add_option("--exclude", pg_exclude, "Frequencies to exclude, e.g. 1/7")->delimiter(',');
  pg_cmd->add_option("--exclusion-radius-bins", pg_radius, "Exclusion radius in Fourier bins");
  pg_cmd->add_flag("--sqrt", pg_sqrt, "Emit root power (amplitude)");
  pg_cmd->add_flag("--skip-detrend", pg_skip_detrend, "Do not remove the linear trend");
  pg_cmd->add_option("--threads", threads, "OpenMP threads");

  // filter
  auto* filter_cmd = app.add_subcommand("filter", "KZFT bandpass filter one component");
  std::string f_input, f_output, f_freq, f_neighbor;
  std::optional<std::size_t> f_m;
  std::size_t f_k = 2;
  bool f_skip_detrend = false;
  filter_cmd->add_option("--input", f_input, "Input CSV")->required();
  filter_cmd->add_option("--freq", f_freq, "Center frequency as a rational, e.g. 1/365")->required();
  filter_cmd->add_option("--m", f_m, "Window length (odd)");
  filter_cmd->add_option("--neighbor", f_neighbor, "Adjacent frequency for choosing m when --m is absent");
  filter_cmd->add_option("--k", f_k, "Iterations")->check(CLI::PositiveNumber);
  filter_cmd->add_option("--output", f_output, "Output CSV (t,real_component); stdout when omitted");
  filter_cmd->add_flag("--skip-detrend", f_skip_detrend, "Do not remove the linear trend");
  filter_cmd->add_option("--threads", threads, "OpenMP threads");

  // bootstrap
  auto* boot_cmd = app.add_subcommand("bootstrap", "Periodic block bootstrap band, optionally after KZFT filtering");
  std::string b_input, b_output, b_freq, b_neighbor, b_reps_out, b_anchor, b_label = "component";
  std::optional<std::size_t> b_period, b_m;
  std::size_t b_k = 2, b_replicates = 1000;
  std::uint64_t b_seed = 0;
  double b_level = 0.95, b_leak = 0.05;
  bool b_skip_detrend = false;
  boot_cmd->add_option("--input", b_input, "Input CSV")->required();
  boot_cmd->add_option("--freq", b_freq, "Filter at this frequency first (VBPBB); unfiltered when omitted");
  boot_cmd->add_option("--period", b_period, "Phase period; defaults to the frequency denominator");
  boot_cmd->add_option("--m", b_m, "Window length (odd)");
  boot_cmd->add_option("--neighbor", b_neighbor, "Adjacent frequency for choosing m");
  boot_cmd->add_option("--k", b_k, "Iterations")->check(CLI::PositiveNumber);
  boot_cmd->add_option("--B", b_replicates, "Replicates")->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
  boot_cmd->add_option("--seed", b_seed, "Master seed");
  boot_cmd->add_option("--level", b_level, "Confidence level")->check(CLI::Range(0.0, 1.0));
  boot_cmd->add_option("--leakage-threshold", b_leak, "Leakage threshold fraction");
  boot_cmd->add_option("--label", b_label, "Component label (keys the random stream)");
  boot_cmd->add_option("--anchor-date", b_anchor, "Date that phase 0 falls on");
  boot_cmd->add_option("--output", b_output, "Band CSV (phase,lower,point,upper); stdout when omitted");
  boot_cmd->add_option("--replicates-output", b_reps_out, "Write every replicate to one matrix CSV");
  boot_cmd->add_flag("--skip-detrend", b_skip_detrend, "Do not remove the linear trend");
  boot_cmd->add_option("--threads", threads, "OpenMP threads");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic multi-component series");
  SynthFlags s_flags;
  std::string s_output, s_start = "2000-01-01";
  s_flags.attach(synth_cmd);
  synth_cmd->add_option("--start-date", s_start, "Date of the first row");
  synth_cmd->add_option("--output", s_output, "Output CSV (date,value); stdout when omitted");

  // coverage
  auto* cov_cmd = app.add_subcommand("coverage", "Monte Carlo coverage of VBPBB and the comparator");
  SynthFlags c_flags;
  std::string c_output, c_method = "both";
  CoverageOptions c_opts;
  std::optional<std::size_t> c_m;
  c_flags.attach(cov_cmd);
  cov_cmd->add_option("--trials", c_opts.trials, "Trials")->check(CLI::PositiveNumber);
  cov_cmd->add_option("--B", c_opts.replicates, "Replicates per band")->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
  cov_cmd->add_option("--level", c_opts.level, "Confidence level")->check(CLI::Range(0.0, 1.0));
  cov_cmd->add_option("--method", c_method, "vbpbb, gsbb or both")->check(CLI::IsMember({"vbpbb", "gsbb", "both"}));
  cov_cmd->add_option("--m", c_m, "Fixed window length; auto-selected when omitted");
  cov_cmd->add_option("--k", c_opts.k, "Iterations")->check(CLI::PositiveNumber);
  cov_cmd->add_option("--output", c_output, "Coverage CSV; stdout when omitted");
  cov_cmd->add_option("--threads", threads, "OpenMP threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  set_threads(threads);

  if (app.get_subcommands().empty()) {
    err << app.help();
    return kExitUsage;
  }

  // Data errors from here on exit 2; UsageError and bad parameters exit 1.
  try {
    if (*analyze_cmd) {
      RunConfig cfg;
      try {
        cfg = read_config(a_config);
      } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
      }
      auto& analysis = cfg.analysis;
      if (a_seed) analysis.bootstrap.seed = *a_seed;
      if (a_replicates) analysis.bootstrap.replicates = *a_replicates;
      if (a_skip_detrend) analysis.detrend = false;
      if (a_no_comparator) analysis.comparator = false;
      std::string input = !a_input.empty() ? a_input : cfg.input.value_or("");
      if (input.empty()) throw UsageError("analyze: no input (use --input or 'input =' in the config)");
      std::string out_dir = a_out;
      if (out_dir.empty() && cfg.output_dir) out_dir = *cfg.output_dir;
      if (out_dir.empty()) {
        const char* env = std::getenv("VBPBB_OUTPUT_DIR");
        out_dir = env != nullptr && *env != '\0' ? env : "vbpbb_out";
      }

      const auto ingested = read_series_csv(input);
      const std::string anchor = !a_anchor.empty() ? a_anchor : cfg.anchor_date.value_or("");
      if (!anchor.empty()) analysis.bootstrap.phase_anchor = anchor_day(anchor, ingested.first_date);

      const auto report = analyze(ingested.series, analysis);
      write_report(report, out_dir);
      out << "wrote " << out_dir << '\n';
      return kExitOk;
    }

    if (*pg_cmd) {
      std::vector<double> excluded;
      for (const auto& e : pg_exclude) excluded.push_back(rational_flag(e, "--exclude").value());
      const auto ingested = read_series_csv(pg_input);
      const auto series = prepared(ingested.series, pg_skip_detrend);
      const auto pg = periodogram(series);
      writing(pg_output, out, [&](std::ostream& o) { write_periodogram_csv(o, pg, pg_sqrt); });
      if (!pg_peaks_output.empty()) {
        const auto peaks = top_peaks(pg, pg_peaks, excluded, pg_radius / static_cast<double>(series.size()));
        if (peaks.incomplete) err << "warning: only " << peaks.entries.size() << " eligible peaks\n";
        writing(pg_peaks_output, out, [&](std::ostream& o) { write_peaks_csv(o, peaks); });
      }
      return kExitOk;
    }

    if (*filter_cmd) {
      const Rational v = rational_flag(f_freq, "--freq");
      std::size_t m = 0;
      if (f_m) {
        m = *f_m;
      } else {
        const Rational neighbor = f_neighbor.empty() ? Rational{0, 1} : rational_flag(f_neighbor, "--neighbor");
        try {
          m = select_window(v, neighbor);
        } catch (const InvalidInput& e) {
          throw UsageError(e.what());
        }
      }
      if (m % 2 == 0) throw UsageError("--m must be odd");
      if (v.value() <= 0.0 || v.value() > 0.5) throw UsageError("--freq must lie in (0, 1/2]");
      const auto ingested = read_series_csv(f_input);
      const auto series = prepared(ingested.series, f_skip_detrend);
      const auto fc = kzft_apply(series, {m, f_k, v.value()});
      writing(f_output, out, [&](std::ostream& o) { write_filtered_csv(o, fc); });
      return kExitOk;
    }

    if (*boot_cmd) {
      ComponentSpec spec;
      spec.label = b_label;
      spec.k = b_k;
      spec.m = b_m;
      FilterSettings filter;
      filter.leakage_threshold = b_leak;
      if (!b_freq.empty()) {
        spec.frequency = rational_flag(b_freq, "--freq");
        if (!b_neighbor.empty()) filter.neighbor = rational_flag(b_neighbor, "--neighbor");
      } else {
        if (!b_period) throw UsageError("bootstrap: give --period or --freq");
        spec.frequency = Rational{1, static_cast<std::int64_t>(*b_period)};
      }
      if (b_period) spec.period = *b_period;
      if (spec.fundamental_period() == 0) throw UsageError("--period must be positive");

      const auto ingested = read_series_csv(b_input);
      const auto series = prepared(ingested.series, b_skip_detrend);
      BootstrapSettings boot;
      boot.replicates = b_replicates;
      boot.seed = b_seed;
      boot.level = b_level;
      if (!b_anchor.empty()) boot.phase_anchor = anchor_day(b_anchor, ingested.first_date);

      if (!b_freq.empty()) {
        const auto r = vbpbb_component(series, spec, boot, filter);
        if (!r.leakage.pass) err << "warning: leakage check failed at m=" << r.window.m << '\n';
        writing(b_output, out, [&](std::ostream& o) { write_band_csv(o, r.band); });
        if (!b_reps_out.empty())
          writing(b_reps_out, out, [&](std::ostream& o) { write_ensemble_csv(o, r.ensemble(), r.filtered.valid_start); });
      } else {
        const auto r = gsbb_component(series, spec, boot);
        writing(b_output, out, [&](std::ostream& o) { write_band_csv(o, r.band); });
        if (!b_reps_out.empty()) {
          const auto e = bootstrap_ensemble(series.values(), r.partition, r.replicates, r.stream_seed);
          writing(b_reps_out, out, [&](std::ostream& o) { write_ensemble_csv(o, e, series.start_index()); });
        }
      }
      return kExitOk;
    }

    if (*synth_cmd) {
      std::chrono::year_month_day start;
      if (!parse_iso_date(s_start, start)) throw UsageError("--start-date must be YYYY-MM-DD");
      const auto series = generate(s_flags.spec());
      writing(s_output, out, [&](std::ostream& o) {
        o << "date,value\n";
        const std::int64_t first = day_number(start);
        for (std::size_t t = 0; t < series.size(); ++t)
          o << format_iso_date(date_of(first + static_cast<std::int64_t>(t))) << ',' << format_double(series[t]) << '\n';
      });
      return kExitOk;
    }

    if (*cov_cmd) {
      const auto spec = c_flags.spec();
      if (spec.components.empty()) throw UsageError("coverage: give at least one --component");
      c_opts.m = c_m;
      std::vector<Method> methods;
      if (c_method != "gsbb") methods.push_back(Method::vbpbb);
      if (c_method != "vbpbb") methods.push_back(Method::gsbb);
      const auto report = coverage_eval(spec, methods, c_opts);
      writing(c_output, out, [&](std::ostream& o) { write_coverage_csv(o, report); });
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("vbpbb");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace vbpbb::cli
