#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vbpbb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Entry point behind the `vbpbb` executable. Subcommands: analyze,
/// periodogram, filter, bootstrap, synth, coverage.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* version();

}  // namespace vbpbb::cli
