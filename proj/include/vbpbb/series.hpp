#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace vbpbb {

/// Uniformly sampled real-valued series. Element i sits at day index
/// start_index() + i. Values are finite and there is at least one of them.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values, std::int64_t start_index = 0);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::int64_t start_index() const noexcept { return start_index_; }
  /// One past the last day index.
  std::int64_t end_index() const noexcept {
    return start_index_ + static_cast<std::int64_t>(values_.size());
  }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
  std::int64_t start_index_;
};

struct LinearTrend {
  double intercept = 0.0;
  double slope = 0.0;

  /// Trend value at position t (0-based within the fitted series).
  double at(double t) const noexcept { return intercept + slope * t; }
};

/// counts / population * 100000, elementwise.
TimeSeries compute_rate(std::span<const std::int64_t> counts, std::int64_t population);
/// Per-day population variant used by CSV ingestion.
TimeSeries compute_rate(std::span<const std::int64_t> counts,
                        std::span<const std::int64_t> population);

/// Ordinary least squares fit of value against position t = 0..n-1.
LinearTrend fit_linear_trend(const TimeSeries& ts);

/// value_t - trend.at(t). Keeps the start index.
TimeSeries detrend(const TimeSeries& ts, const LinearTrend& trend);

}  // namespace vbpbb
