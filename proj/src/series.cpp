#include "vbpbb/series.hpp"

#include <cmath>
#include <string>

#include "vbpbb/error.hpp"

namespace vbpbb {

TimeSeries::TimeSeries(std::vector<double> values, std::int64_t start_index)
    : values_(std::move(values)), start_index_(start_index) {
  if (values_.empty()) throw InvalidInput("time series must contain at least one value");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw InvalidInput("non-finite value at position " + std::to_string(i));
  }
}

namespace {

double rate(std::int64_t count, std::int64_t population) {
  if (population <= 0) throw InvalidInput("population must be positive");
  if (count < 0) throw InvalidInput("counts must be nonnegative");
  return static_cast<double>(count) / static_cast<double>(population) * 100000.0;
}

}  // namespace

TimeSeries compute_rate(std::span<const std::int64_t> counts, std::int64_t population) {
  if (population <= 0) throw InvalidInput("population must be positive");
  std::vector<double> out;
  out.reserve(counts.size());
  for (auto c : counts) out.push_back(rate(c, population));
  return TimeSeries(std::move(out));
}

TimeSeries compute_rate(std::span<const std::int64_t> counts,
                        std::span<const std::int64_t> population) {
  if (counts.size() != population.size())
    throw InvalidInput("counts and population differ in length");
  std::vector<double> out;
  out.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) out.push_back(rate(counts[i], population[i]));
  return TimeSeries(std::move(out));
}

LinearTrend fit_linear_trend(const TimeSeries& ts) {
  const std::size_t n = ts.size();
  if (n < 2) throw InsufficientData("linear trend fit", 2);

  // Centered normal equations; t_bar = (n-1)/2.
  const double t_bar = 0.5 * static_cast<double>(n - 1);
  double y_bar = 0.0;
  for (double v : ts.values()) y_bar += v;
  y_bar /= static_cast<double>(n);

  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double dt = static_cast<double>(t) - t_bar;
    sxy += dt * (ts[t] - y_bar);
    sxx += dt * dt;
  }
  const double slope = sxy / sxx;
  return {y_bar - slope * t_bar, slope};
}

TimeSeries detrend(const TimeSeries& ts, const LinearTrend& trend) {
  std::vector<double> out(ts.size());
  for (std::size_t t = 0; t < ts.size(); ++t) out[t] = ts[t] - trend.at(static_cast<double>(t));
  return TimeSeries(std::move(out), ts.start_index());
}

}  // namespace vbpbb
