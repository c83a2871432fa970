#include "vbpbb/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vbpbb/error.hpp"
#include "vbpbb/kernels.hpp"

namespace vbpbb {

PhasePartition::PhasePartition(std::size_t n, std::size_t period, std::size_t offset)
    : n_(n), period_(period), offset_(period == 0 ? 0 : offset % period) {
  if (period == 0) throw InvalidInput("period must be positive");
  if (n < period) throw InsufficientData("phase partition with period " + std::to_string(period), period);

  starts_.assign(period + 1, 0);
  for (std::size_t t = 0; t < n; ++t) ++starts_[phase_of(t) + 1];
  for (std::size_t j = 0; j < period; ++j) starts_[j + 1] += starts_[j];

  indices_.resize(n);
  std::vector<std::size_t> fill(starts_.begin(), starts_.end() - 1);
  for (std::size_t t = 0; t < n; ++t) indices_[fill[phase_of(t)]++] = t;
}

PhasePartition partition_phases(std::size_t n, std::size_t period, std::size_t offset) {
  return PhasePartition(n, period, offset);
}

std::size_t phase_offset(std::int64_t first_day, std::int64_t anchor_day, std::size_t period) {
  const auto p = static_cast<std::int64_t>(period);
  const std::int64_t d = ((first_day - anchor_day) % p + p) % p;
  return static_cast<std::size_t>(d);
}

PeriodicMeanCurve periodic_mean(std::span<const double> series, const PhasePartition& partition) {
  if (series.size() != partition.size())
    throw InvalidInput("series length does not match the phase partition");
  const std::size_t p = partition.period();
  std::vector<double> sums(p, 0.0);
  for (std::size_t t = 0; t < series.size(); ++t) sums[partition.phase_of(t)] += series[t];
  for (std::size_t j = 0; j < p; ++j) {
    const auto size = partition.stratum(j).size();
    if (size == 0) throw InsufficientData("empty phase stratum", p);
    sums[j] /= static_cast<double>(size);
  }
  return sums;
}

PeriodicMeanCurve periodic_mean(std::span<const double> series, std::size_t period,
                                std::size_t offset) {
  return periodic_mean(series, PhasePartition(series.size(), period, offset));
}

BootstrapEnsemble bootstrap_ensemble(std::span<const double> source,
                                     const PhasePartition& partition, std::size_t replicates,
                                     std::uint64_t seed) {
  if (source.size() != partition.size())
    throw InvalidInput("series length does not match the phase partition");
  BootstrapEnsemble e{replicates, source.size(), partition.period(), partition.offset(), seed,
                      std::vector<double>(replicates * source.size())};
  kernels::bootstrap_replicates(source, partition, seed, replicates, e.data);
  return e;
}

ReplicateMeans bootstrap_means(std::span<const double> source, const PhasePartition& partition,
                               std::size_t replicates, std::uint64_t seed) {
  if (source.size() != partition.size())
    throw InvalidInput("series length does not match the phase partition");
  ReplicateMeans m{replicates, partition.period(),
                   std::vector<double>(replicates * partition.period())};
  kernels::bootstrap_means(source, partition, seed, replicates, m.data);
  return m;
}

ReplicateMeans replicate_means(const BootstrapEnsemble& ensemble) {
  const PhasePartition partition(ensemble.length, ensemble.period, ensemble.offset);
  ReplicateMeans m{ensemble.replicates, ensemble.period,
                   std::vector<double>(ensemble.replicates * ensemble.period)};
  for (std::size_t b = 0; b < ensemble.replicates; ++b) {
    const auto curve = periodic_mean(ensemble.replicate(b), partition);
    std::copy(curve.begin(), curve.end(),
              m.data.begin() + static_cast<std::ptrdiff_t>(b * ensemble.period));
  }
  return m;
}

double quantile_type7(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InvalidInput("quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double CIBand::mean_width() const {
  double total = 0.0;
  for (std::size_t j = 0; j < lower.size(); ++j) total += upper[j] - lower[j];
  return lower.empty() ? 0.0 : total / static_cast<double>(lower.size());
}

CIBand ci_band(const ReplicateMeans& means, std::span<const double> point, double level) {
  if (means.replicates < 2) throw InvalidInput("a band needs at least two replicates");
  if (!(level > 0.0 && level < 1.0)) throw InvalidInput("confidence level must lie in (0, 1)");
  if (point.size() != means.period) throw InvalidInput("point estimate length differs from period");

  const std::size_t p = means.period;
  CIBand band{level, std::vector<double>(p), std::vector<double>(p),
              std::vector<double>(point.begin(), point.end())};
  std::vector<double> column(means.replicates);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t b = 0; b < means.replicates; ++b) column[b] = means.data[b * p + j];
    std::sort(column.begin(), column.end());
    band.lower[j] = quantile_type7(column, (1.0 - level) / 2.0);
    band.upper[j] = quantile_type7(column, (1.0 + level) / 2.0);
  }
  return band;
}

CIBand ci_band(const BootstrapEnsemble& ensemble, std::span<const double> point, double level) {
  return ci_band(replicate_means(ensemble), point, level);
}

bool is_significant(const CIBand& band) {
  if (band.lower.empty()) return false;
  const double min_upper = *std::min_element(band.upper.begin(), band.upper.end());
  const double max_lower = *std::max_element(band.lower.begin(), band.lower.end());
  return min_upper < max_lower;
}

double band_width_ratio(const CIBand& band_a, const CIBand& band_b) {
  if (band_a.period() != band_b.period()) throw InvalidInput("bands have different periods");
  const double denom = band_b.mean_width();
  if (!(denom > 0.0)) throw InvalidInput("width ratio undefined: reference band has zero width");
  return band_a.mean_width() / denom;
}

CrestTrough crest_trough(const CIBand& band) {
  if (band.point.empty()) throw InvalidInput("empty band");
  // max_element/min_element return the first extremum, which is the tie rule.
  const auto crest = static_cast<std::size_t>(
      std::max_element(band.point.begin(), band.point.end()) - band.point.begin());
  const auto trough = static_cast<std::size_t>(
      std::min_element(band.point.begin(), band.point.end()) - band.point.begin());
  return {crest, {band.lower[crest], band.upper[crest]},
          trough, {band.lower[trough], band.upper[trough]}};
}

}  // namespace vbpbb
