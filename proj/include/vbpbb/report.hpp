#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "vbpbb/bootstrap.hpp"
#include "vbpbb/kz.hpp"
#include "vbpbb/pipeline.hpp"
#include "vbpbb/spectral.hpp"
#include "vbpbb/synth.hpp"

namespace vbpbb {

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// Header of summary.csv, one column per Table-1 style field.
inline constexpr const char* kSummaryHeader =
    "Component,v,m,k,VBPBB Crest,VBPBB Trough,GSBB Crest,GSBB Trough,GSBB/VBPBB";

void write_series_csv(std::ostream& out, const TimeSeries& ts);                    // t,value
void write_periodogram_csv(std::ostream& out, const Periodogram& pg, bool root);  // frequency,power
void write_peaks_csv(std::ostream& out, const PeakList& peaks);                    // rank,frequency,period_days,power
void write_band_csv(std::ostream& out, const CIBand& band);                        // phase,lower,point,upper
void write_filtered_csv(std::ostream& out, const FilteredComponent& fc);           // t,real_component
void write_ensemble_csv(std::ostream& out, const BootstrapEnsemble& e, std::int64_t first_day);
void write_summary_csv(std::ostream& out, const AnalysisReport& report);
void write_coverage_csv(std::ostream& out, const CoverageReport& report);

/// File-name safe form of a component label.
std::string label_slug(const std::string& label);

/// summary.csv, band_<label>.csv, combined_band.csv, periodogram.csv,
/// peaks.csv, detrended.csv and report.txt under `dir`.
void write_report(const AnalysisReport& report, const std::filesystem::path& dir);

}  // namespace vbpbb
