#include "vbpbb/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "vbpbb/error.hpp"
#include "vbpbb/kernels.hpp"

namespace vbpbb {

Periodogram periodogram(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 4) throw InsufficientData("periodogram", 4);
  Periodogram pg;
  pg.n = n;
  pg.power = kernels::dft_power(values);
  pg.frequencies.resize(pg.power.size());
  for (std::size_t j = 0; j < pg.frequencies.size(); ++j)
    pg.frequencies[j] = static_cast<double>(j + 1) / static_cast<double>(n);
  return pg;
}

PeakList top_peaks(const Periodogram& pg, std::size_t count, std::span<const double> excluded,
                   double exclusion_radius) {
  if (count == 0) throw InvalidInput("peak count must be positive");
  if (exclusion_radius < 0.0) throw InvalidInput("exclusion radius must be nonnegative");

  std::vector<Peak> eligible;
  const std::size_t size = pg.size();
  for (std::size_t i = 0; i < size; ++i) {
    const double p = pg.power[i];
    if (i > 0 && p < pg.power[i - 1]) continue;
    if (i + 1 < size && p < pg.power[i + 1]) continue;
    const double f = pg.frequencies[i];
    const bool blocked = std::any_of(excluded.begin(), excluded.end(), [&](double e) {
      return std::abs(f - e) <= exclusion_radius;
    });
    if (!blocked) eligible.push_back({i + 1, f, p});
  }
  // Stable on ties so the lower frequency ranks first.
  std::stable_sort(eligible.begin(), eligible.end(),
                   [](const Peak& a, const Peak& b) { return a.power > b.power; });

  PeakList out;
  out.incomplete = eligible.size() < count;
  eligible.resize(std::min(count, eligible.size()));
  out.entries = std::move(eligible);
  return out;
}

}  // namespace vbpbb
