#include "vbpbb/report.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "vbpbb/error.hpp"

namespace vbpbb {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

std::string fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  // "-0.000" -> "0.000"
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string interval_cell(const Interval& iv, bool star) {
  return "\"(" + fixed(iv.lo, 3) + ", " + fixed(iv.hi, 3) + ")" + (star ? "*" : "") + "\"";
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path.string(), 0, 0, "cannot open for writing");
  return out;
}

}  // namespace

void write_series_csv(std::ostream& out, const TimeSeries& ts) {
  out << "t,value\n";
  for (std::size_t i = 0; i < ts.size(); ++i)
    out << ts.start_index() + static_cast<std::int64_t>(i) << ',' << format_double(ts[i]) << '\n';
}

void write_periodogram_csv(std::ostream& out, const Periodogram& pg, bool root) {
  out << (root ? "frequency,amplitude\n" : "frequency,power\n");
  for (std::size_t j = 0; j < pg.size(); ++j)
    out << format_double(pg.frequencies[j]) << ','
        << format_double(root ? std::sqrt(pg.power[j]) : pg.power[j]) << '\n';
}

void write_peaks_csv(std::ostream& out, const PeakList& peaks) {
  out << "rank,frequency,period_days,power\n";
  for (std::size_t i = 0; i < peaks.entries.size(); ++i) {
    const auto& p = peaks.entries[i];
    out << i + 1 << ',' << format_double(p.frequency) << ',' << format_double(1.0 / p.frequency) << ','
        << format_double(p.power) << '\n';
  }
}

void write_band_csv(std::ostream& out, const CIBand& band) {
  out << "phase,lower,point,upper\n";
  for (std::size_t j = 0; j < band.period(); ++j)
    out << j << ',' << format_double(band.lower[j]) << ',' << format_double(band.point[j]) << ','
        << format_double(band.upper[j]) << '\n';
}

void write_filtered_csv(std::ostream& out, const FilteredComponent& fc) {
  out << "t,real_component\n";
  for (std::size_t i = 0; i < fc.real_values.size(); ++i)
    out << fc.valid_start + static_cast<std::int64_t>(i) << ',' << format_double(fc.real_values[i]) << '\n';
}

void write_ensemble_csv(std::ostream& out, const BootstrapEnsemble& e, std::int64_t first_day) {
  out << "replicate";
  for (std::size_t t = 0; t < e.length; ++t) out << ",t" << first_day + static_cast<std::int64_t>(t);
  out << '\n';
  for (std::size_t b = 0; b < e.replicates; ++b) {
    out << b;
    for (double v : e.replicate(b)) out << ',' << format_double(v);
    out << '\n';
  }
}

void write_summary_csv(std::ostream& out, const AnalysisReport& report) {
  out << kSummaryHeader << '\n';
  for (const auto& row : report.rows) {
    const auto& r = row.vbpbb;
    const auto ct = crest_trough(r.band);
    out << csv_text(r.spec.label) << ',' << r.spec.frequency.str() << ',' << r.window.m << ','
        << r.window.k << ',' << interval_cell(ct.crest, r.significant) << ','
        << interval_cell(ct.trough, r.significant) << ',';
    if (row.gsbb) {
      const auto gct = crest_trough(row.gsbb->band);
      out << interval_cell(gct.crest, row.gsbb->significant) << ','
          << interval_cell(gct.trough, row.gsbb->significant) << ',';
      out << (row.width_ratio ? fixed(*row.width_ratio, 1) : std::string("NA"));
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

void write_coverage_csv(std::ostream& out, const CoverageReport& report) {
  out << "method,component,mean_coverage,mean_width,trials\n";
  for (const auto& r : report.rows)
    out << method_name(r.method) << ',' << r.component << ',' << format_double(r.mean_coverage) << ','
        << format_double(r.mean_width) << ',' << r.trials << '\n';
}

std::string label_slug(const std::string& label) {
  std::string s;
  for (char c : label) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!s.empty() && s.back() != '_') {
      s += '_';
    }
  }
  while (!s.empty() && s.back() == '_') s.pop_back();
  return s.empty() ? "component" : s;
}

void write_report(const AnalysisReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / "summary.csv");
    write_summary_csv(out, report);
  }
  {
    auto out = open_out(dir / "periodogram.csv");
    write_periodogram_csv(out, report.periodogram, false);
  }
  {
    auto out = open_out(dir / "peaks.csv");
    write_peaks_csv(out, report.peaks);
  }
  {
    auto out = open_out(dir / "detrended.csv");
    write_series_csv(out, report.series);
  }
  for (const auto& row : report.rows) {
    const std::string slug = label_slug(row.vbpbb.spec.label);
    {
      auto out = open_out(dir / ("band_" + slug + ".csv"));
      write_band_csv(out, row.vbpbb.band);
    }
    if (row.gsbb) {
      auto out = open_out(dir / ("band_" + slug + "_gsbb.csv"));
      write_band_csv(out, row.gsbb->band);
    }
  }
  if (report.combined) {
    auto out = open_out(dir / "combined_band.csv");
    write_band_csv(out, report.combined->band);
  }

  auto out = open_out(dir / "report.txt");
  if (report.detrended) {
    out << "trend intercept " << format_double(report.trend.intercept) << " slope "
        << format_double(report.trend.slope) << '\n';
  } else {
    out << "trend not removed\n";
  }
  for (const auto& row : report.rows) {
    const auto& r = row.vbpbb;
    out << r.spec.label << ": v=" << r.spec.frequency.str() << " period=" << r.spec.fundamental_period()
        << " m=" << r.window.m << (r.window.auto_selected ? " (auto" : " (fixed")
        << (r.window.widened ? ", widened)" : ")") << " k=" << r.window.k << " valid=["
        << r.filtered.valid_start << ',' << r.filtered.valid_end << ") leakage="
        << (r.leakage.zero_energy ? "zero-energy" : r.leakage.pass ? "pass" : "FAIL")
        << " significant=" << (r.significant ? "yes" : "no") << '\n';
  }
  if (report.combined) {
    const auto& c = *report.combined;
    out << "combined:";
    for (const auto& l : c.labels) out << ' ' << l << ';';
    out << " period=" << c.band.period() << " valid=[" << c.valid_start << ',' << c.valid_end
        << ") significant=" << (c.significant ? "yes" : "no") << '\n';
  }
  for (const auto& note : report.notes) out << "note: " << note << '\n';
}

}  // namespace vbpbb
