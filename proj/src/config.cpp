#include "vbpbb/config.hpp"

#include <charconv>
#include <fstream>

#include "vbpbb/error.hpp"

namespace vbpbb {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(std::string_view s, std::string_view key) {
  s = trim(s);
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw InvalidInput("bad value for '" + std::string(key) + "': '" + std::string(s) + "'");
  return v;
}

bool parse_bool(std::string_view s, std::string_view key) {
  s = trim(s);
  if (s == "true" || s == "on" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "off" || s == "no" || s == "0") return false;
  throw InvalidInput("bad boolean for '" + std::string(key) + "': '" + std::string(s) + "'");
}

}  // namespace

ComponentSpec parse_component(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() < 2 || parts[0].empty())
    throw InvalidInput("component needs 'label, frequency': '" + std::string(text) + "'");

  ComponentSpec spec;
  spec.label = std::string(parts[0]);
  spec.frequency = parse_rational(parts[1]);
  for (std::size_t i = 2; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string_view::npos)
      throw InvalidInput("component option must be key=value: '" + std::string(parts[i]) + "'");
    const auto key = trim(parts[i].substr(0, eq));
    const auto value = parts[i].substr(eq + 1);
    if (key == "m") {
      spec.m = parse_number<std::size_t>(value, key);
      if (*spec.m % 2 == 0) throw InvalidInput("component window m must be odd");
    } else if (key == "k") {
      spec.k = parse_number<std::size_t>(value, key);
      if (spec.k == 0) throw InvalidInput("component iterations k must be positive");
    } else if (key == "period") {
      spec.period = parse_number<std::size_t>(value, key);
      if (spec.period == 0) throw InvalidInput("component period must be positive");
    } else {
      throw InvalidInput("unknown component option '" + std::string(key) + "'");
    }
  }
  return spec;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw DataError(source, line_no, 1, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const std::size_t value_col = static_cast<std::size_t>(value.data() - raw.data()) + 1;

    try {
      auto& a = cfg.analysis;
      if (key == "input") {
        cfg.input = std::string(value);
      } else if (key == "output_dir") {
        cfg.output_dir = std::string(value);
      } else if (key == "anchor_date") {
        cfg.anchor_date = std::string(value);
      } else if (key == "replicates" || key == "B") {
        a.bootstrap.replicates = parse_number<std::size_t>(value, key);
      } else if (key == "seed") {
        a.bootstrap.seed = parse_number<std::uint64_t>(value, key);
      } else if (key == "level") {
        a.bootstrap.level = parse_number<double>(value, key);
      } else if (key == "leakage_threshold") {
        a.leakage_threshold = parse_number<double>(value, key);
      } else if (key == "comparator") {
        a.comparator = parse_bool(value, key);
      } else if (key == "detrend") {
        a.detrend = parse_bool(value, key);
      } else if (key == "aggregate") {
        a.aggregate = parse_bool(value, key);
      } else if (key == "peaks") {
        a.peak_count = parse_number<std::size_t>(value, key);
      } else if (key == "exclusion_radius_bins") {
        a.exclusion_radius_bins = parse_number<double>(value, key);
      } else if (key == "component") {
        a.components.push_back(parse_component(value));
      } else {
        throw InvalidInput("unknown key '" + std::string(key) + "'");
      }
    } catch (const InvalidInput& e) {
      throw DataError(source, line_no, value_col, e.what());
    }
  }
  return cfg;
}

RunConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path, 0, 0, "cannot open config file");
  return parse_config(in, path);
}

}  // namespace vbpbb
