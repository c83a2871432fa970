#pragma once

#include <istream>
#include <optional>
#include <string>

#include "vbpbb/pipeline.hpp"

namespace vbpbb {

/// Analysis run description read from a key-value file:
///
///     # comments start with '#'
///     input = ihd.csv
///     output_dir = out
///     replicates = 1000          (alias: B)
///     seed = 42
///     level = 0.95
///     leakage_threshold = 0.05
///     comparator = true
///     detrend = true
///     aggregate = true
///     peaks = 10
///     exclusion_radius_bins = 2
///     anchor_date = 2002-01-06   phase 0 falls on this date
///     component = Weekly, 1/7
///     component = Annual, 1/365, m=2921, k=2
///
/// Component fields after the frequency are optional `m=`, `k=` and
/// `period=` overrides.
struct RunConfig {
  std::optional<std::string> input;
  std::optional<std::string> output_dir;
  std::optional<std::string> anchor_date;
  AnalysisConfig analysis;
};

RunConfig parse_config(std::istream& in, const std::string& source_name);
RunConfig read_config(const std::string& path);

/// "Weekly, 1/7, m=29" -> ComponentSpec. Throws InvalidInput.
ComponentSpec parse_component(std::string_view text);

}  // namespace vbpbb
