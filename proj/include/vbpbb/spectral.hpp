#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vbpbb/series.hpp"

namespace vbpbb {

/// Raw periodogram on the Fourier grid f_j = j/n, j = 1..floor(n/2), with
/// power (1/n)|DFT|^2 and no taper. Sum of powers is at most sum of squares.
struct Periodogram {
  std::size_t n = 0;
  std::vector<double> frequencies;
  std::vector<double> power;

  std::size_t size() const noexcept { return power.size(); }
};

Periodogram periodogram(std::span<const double> values);
inline Periodogram periodogram(const TimeSeries& ts) { return periodogram(ts.values()); }

struct Peak {
  std::size_t bin = 0;  // j, so frequency = j/n
  double frequency = 0.0;
  double power = 0.0;
};

struct PeakList {
  std::vector<Peak> entries;  // descending power
  bool incomplete = false;    // fewer eligible local maxima than requested
};

/// The `count` strongest local maxima of the periodogram whose frequency is
/// farther than `exclusion_radius` from every excluded frequency.
PeakList top_peaks(const Periodogram& pg, std::size_t count, std::span<const double> excluded,
                   double exclusion_radius);

}  // namespace vbpbb
