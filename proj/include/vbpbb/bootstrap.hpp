#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "vbpbb/rng.hpp"

namespace vbpbb {

/// Phase strata of a length-n series: position t belongs to stratum
/// (t + offset) mod p. With offset 0, phase 0 is the first position.
class PhasePartition {
 public:
  PhasePartition(std::size_t n, std::size_t period, std::size_t offset = 0);

  std::size_t size() const noexcept { return n_; }
  std::size_t period() const noexcept { return period_; }
  std::size_t offset() const noexcept { return offset_; }
  std::size_t phase_of(std::size_t t) const noexcept { return (t + offset_) % period_; }
  std::span<const std::size_t> stratum(std::size_t phase) const noexcept {
    return {indices_.data() + starts_[phase], starts_[phase + 1] - starts_[phase]};
  }

 private:
  std::size_t n_;
  std::size_t period_;
  std::size_t offset_;
  std::vector<std::size_t> indices_;  // grouped by phase, ascending within a phase
  std::vector<std::size_t> starts_;   // period + 1 entries
};

/// Throws InsufficientData when n < p and InvalidInput when p == 0.
PhasePartition partition_phases(std::size_t n, std::size_t period, std::size_t offset = 0);

/// Offset that puts phase 0 on absolute day `anchor_day` for a series whose
/// first element sits on `first_day`.
std::size_t phase_offset(std::int64_t first_day, std::int64_t anchor_day, std::size_t period);

/// One phase-stratified resample: out[t] is drawn uniformly with replacement
/// from the source values of t's stratum.
template <IndexSource Source>
void pbb_resample(std::span<const double> source, const PhasePartition& partition, Source& rng,
                  std::span<double> out) {
  for (std::size_t t = 0; t < out.size(); ++t) {
    const auto stratum = partition.stratum(partition.phase_of(t));
    out[t] = source[stratum[rng.draw(stratum.size())]];
  }
}

template <IndexSource Source>
std::vector<double> pbb_resample(std::span<const double> source, const PhasePartition& partition,
                                 Source& rng) {
  std::vector<double> out(source.size());
  pbb_resample(source, partition, rng, std::span<double>(out));
  return out;
}

using PeriodicMeanCurve = std::vector<double>;

/// Per-phase arithmetic mean. Sums in ascending t, which the bootstrap kernels
/// reproduce exactly.
PeriodicMeanCurve periodic_mean(std::span<const double> series, const PhasePartition& partition);
PeriodicMeanCurve periodic_mean(std::span<const double> series, std::size_t period,
                                std::size_t offset = 0);

/// B replicate series, row-major.
struct BootstrapEnsemble {
  std::size_t replicates = 0;
  std::size_t length = 0;
  std::size_t period = 0;
  std::size_t offset = 0;
  std::uint64_t seed = 0;
  std::vector<double> data;

  std::span<const double> replicate(std::size_t b) const {
    return {data.data() + b * length, length};
  }
};

/// Periodic mean of every replicate, B x p row-major.
struct ReplicateMeans {
  std::size_t replicates = 0;
  std::size_t period = 0;
  std::vector<double> data;

  std::span<const double> curve(std::size_t b) const { return {data.data() + b * period, period}; }
};

/// Replicate b is drawn from the stream derive_seed(seed, b).
BootstrapEnsemble bootstrap_ensemble(std::span<const double> source,
                                     const PhasePartition& partition, std::size_t replicates,
                                     std::uint64_t seed);

/// Same draws as bootstrap_ensemble without materialising the replicates.
ReplicateMeans bootstrap_means(std::span<const double> source, const PhasePartition& partition,
                               std::size_t replicates, std::uint64_t seed);

ReplicateMeans replicate_means(const BootstrapEnsemble& ensemble);

/// Ensemble driven by a caller-supplied source per replicate; `make_source(b)`
/// must return an IndexSource. Used with counting sources for enumeration.
template <class SourceFactory>
BootstrapEnsemble bootstrap_ensemble_with(std::span<const double> source,
                                          const PhasePartition& partition,
                                          std::size_t replicates, SourceFactory&& make_source) {
  BootstrapEnsemble e{replicates, source.size(), partition.period(), partition.offset(), 0,
                      std::vector<double>(replicates * source.size())};
  for (std::size_t b = 0; b < replicates; ++b) {
    auto rng = make_source(b);
    pbb_resample(source, partition, rng,
                 std::span<double>(e.data.data() + b * e.length, e.length));
  }
  return e;
}

/// Quantile with linear interpolation between order statistics ("type 7").
/// `sorted` must be ascending and nonempty.
double quantile_type7(std::span<const double> sorted, double q);

struct CIBand {
  double level = 0.95;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> point;

  std::size_t period() const noexcept { return lower.size(); }
  double mean_width() const;
};

/// Pointwise percentile band from replicate means. `point` is the periodic
/// mean of the unresampled series.
CIBand ci_band(const ReplicateMeans& means, std::span<const double> point, double level);
CIBand ci_band(const BootstrapEnsemble& ensemble, std::span<const double> point, double level);

/// True when no horizontal line fits inside the band:
/// min over phases of upper < max over phases of lower.
bool is_significant(const CIBand& band);

/// Mean width of band_a over mean width of band_b.
double band_width_ratio(const CIBand& band_a, const CIBand& band_b);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct CrestTrough {
  std::size_t crest_phase = 0;
  Interval crest;
  std::size_t trough_phase = 0;
  Interval trough;
};

/// Band bounds at the arg max / arg min of the point estimate; ties go to
/// the smallest phase.
CrestTrough crest_trough(const CIBand& band);

}  // namespace vbpbb
