#pragma once

#include <chrono>
#include <cstdint>
#include <istream>
#include <string>

#include "vbpbb/series.hpp"

namespace vbpbb {

/// Day number of a proleptic Gregorian date (days since 1970-01-01).
std::int64_t day_number(const std::chrono::year_month_day& date);
std::chrono::year_month_day date_of(std::int64_t day_number);
/// Strict YYYY-MM-DD. Returns false on malformed or impossible dates.
bool parse_iso_date(std::string_view text, std::chrono::year_month_day& out);
std::string format_iso_date(const std::chrono::year_month_day& date);

struct IngestedSeries {
  TimeSeries series;           // start_index 0 = first date
  std::chrono::year_month_day first_date;
  bool from_counts = false;    // date,count,population input
};

/// Reads `date,count,population` (converted to rate per 100000) or
/// `date,value`. Dates must be consecutive days. Throws DataError with the
/// offending line and column.
IngestedSeries read_series_csv(std::istream& in, const std::string& source_name);
IngestedSeries read_series_csv(const std::string& path);

}  // namespace vbpbb
