#include "vbpbb/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

#include "vbpbb/error.hpp"

namespace vbpbb {

std::int64_t day_number(const std::chrono::year_month_day& date) {
  return std::chrono::sys_days{date}.time_since_epoch().count();
}

std::chrono::year_month_day date_of(std::int64_t day_number) {
  return std::chrono::year_month_day{std::chrono::sys_days{std::chrono::days{day_number}}};
}

bool parse_iso_date(std::string_view text, std::chrono::year_month_day& out) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  auto parse = [&](std::string_view s, auto& v) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && ptr == s.data() + s.size();
  };
  if (!parse(text.substr(0, 4), y) || !parse(text.substr(5, 2), m) || !parse(text.substr(8, 2), d))
    return false;
  out = std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d};
  return out.ok();
}

std::string format_iso_date(const std::chrono::year_month_day& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

namespace {

struct Field {
  std::string_view text;
  std::size_t column;  // 1-based character column
};

std::vector<Field> split(std::string_view line) {
  std::vector<Field> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    auto piece = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    std::size_t col = start + 1;
    while (!piece.empty() && (piece.front() == ' ' || piece.front() == '\t')) {
      piece.remove_prefix(1);
      ++col;
    }
    while (!piece.empty() && (piece.back() == ' ' || piece.back() == '\t')) piece.remove_suffix(1);
    fields.push_back({piece, col});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

IngestedSeries read_series_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line()) throw DataError(source, 1, 1, "empty input");
  const auto header = split(line);
  bool counts = false;
  if (header.size() == 3 && header[0].text == "date" && header[1].text == "count" &&
      header[2].text == "population") {
    counts = true;
  } else if (!(header.size() == 2 && header[0].text == "date" && header[1].text == "value")) {
    throw DataError(source, line_no, 1,
                    "expected header 'date,count,population' or 'date,value'");
  }

  std::vector<double> values;
  std::vector<std::int64_t> count_col;
  std::vector<std::int64_t> pop_col;
  std::chrono::year_month_day first{};
  std::int64_t prev_day = 0;

  while (next_line()) {
    const auto fields = split(line);
    if (fields.size() != header.size())
      throw DataError(source, line_no, 1,
                      "expected " + std::to_string(header.size()) + " fields, got " +
                          std::to_string(fields.size()));
    std::chrono::year_month_day date;
    if (!parse_iso_date(fields[0].text, date))
      throw DataError(source, line_no, fields[0].column, "invalid date '" + std::string(fields[0].text) + "'");
    const std::int64_t day = day_number(date);
    if (values.empty() && count_col.empty()) {
      first = date;
    } else if (day != prev_day + 1) {
      throw DataError(source, line_no, fields[0].column,
                      day <= prev_day ? "dates must be strictly increasing"
                                      : "gap in daily dates before " + std::string(fields[0].text));
    }
    prev_day = day;

    if (counts) {
      std::int64_t c = 0;
      std::int64_t p = 0;
      const auto& fc = fields[1];
      const auto& fp = fields[2];
      auto rc = std::from_chars(fc.text.data(), fc.text.data() + fc.text.size(), c);
      if (fc.text.empty() || rc.ec != std::errc{} || rc.ptr != fc.text.data() + fc.text.size() || c < 0)
        throw DataError(source, line_no, fc.column, "invalid count '" + std::string(fc.text) + "'");
      auto rp = std::from_chars(fp.text.data(), fp.text.data() + fp.text.size(), p);
      if (fp.text.empty() || rp.ec != std::errc{} || rp.ptr != fp.text.data() + fp.text.size() || p <= 0)
        throw DataError(source, line_no, fp.column, "invalid population '" + std::string(fp.text) + "'");
      count_col.push_back(c);
      pop_col.push_back(p);
    } else {
      const auto& fv = fields[1];
      double v = 0.0;
      auto rv = std::from_chars(fv.text.data(), fv.text.data() + fv.text.size(), v);
      if (fv.text.empty() || rv.ec != std::errc{} || rv.ptr != fv.text.data() + fv.text.size() ||
          !std::isfinite(v))
        throw DataError(source, line_no, fv.column, "invalid value '" + std::string(fv.text) + "'");
      values.push_back(v);
    }
  }

  if (values.empty() && count_col.empty()) throw DataError(source, line_no + 1, 1, "no data rows");
  if (counts) return {compute_rate(count_col, pop_col), first, true};
  return {TimeSeries(std::move(values)), first, false};
}

IngestedSeries read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path, 0, 0, "cannot open file");
  return read_series_csv(in, path);
}

}  // namespace vbpbb
