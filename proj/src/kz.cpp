#include "vbpbb/kz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vbpbb/error.hpp"
#include "vbpbb/kernels.hpp"
#include "vbpbb/spectral.hpp"

namespace vbpbb {

namespace {

void check_window(std::size_t m, std::size_t k) {
  if (m == 0 || m % 2 == 0) throw InvalidInput("window length m must be odd and positive, got " + std::to_string(m));
  if (k == 0) throw InvalidInput("iteration count k must be positive");
}

std::size_t smallest_odd_above(std::int64_t num, std::int64_t den) {
  // floor(num/den) + 1, bumped to odd.
  auto next = static_cast<std::size_t>(num / den + 1);
  if (next % 2 == 0) ++next;
  return next;
}

}  // namespace

std::vector<BigInt> kz_integer_coefficients(std::size_t m, std::size_t k) {
  check_window(m, k);
  std::vector<BigInt> poly{1};
  for (std::size_t pass = 0; pass < k; ++pass) {
    // Multiply by 1 + z + ... + z^{m-1}: a sliding window sum.
    std::vector<BigInt> next(poly.size() + m - 1);
    BigInt window = 0;
    for (std::size_t r = 0; r < next.size(); ++r) {
      if (r < poly.size()) window += poly[r];
      if (r >= m) window -= poly[r - m];
      next[r] = window;
    }
    poly = std::move(next);
  }
  return poly;
}

CoefficientVector::CoefficientVector(std::size_t m, std::size_t k) : m_(m), k_(k) {
  const auto ints = kz_integer_coefficients(m, k);
  BigInt total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= m;
  using Rat = boost::multiprecision::cpp_rational;
  coeffs_.reserve(ints.size());
  for (const auto& a : ints) coeffs_.push_back(static_cast<double>(Rat(a, total)));
}

CoefficientVector kz_coefficients(std::size_t m, std::size_t k) { return CoefficientVector(m, k); }

FilteredComponent kzft_apply(const TimeSeries& ts, const KzftConfig& cfg) {
  check_window(cfg.m, cfg.k);
  if (!(cfg.v >= 0.0 && cfg.v <= 0.5)) throw InvalidInput("center frequency must lie in [0, 0.5]");
  const std::size_t span = cfg.k * (cfg.m - 1);
  if (ts.size() <= span)
    throw InsufficientData("KZFT with m=" + std::to_string(cfg.m) + ", k=" + std::to_string(cfg.k),
                           span + 1);

  const CoefficientVector w(cfg.m, cfg.k);
  const auto h = static_cast<std::int64_t>(w.half_width());
  std::vector<std::complex<double>> kernel(w.size());
  for (std::int64_t u = -h; u <= h; ++u) {
    const double angle = -2.0 * std::numbers::pi * cfg.v * static_cast<double>(u);
    kernel[static_cast<std::size_t>(u + h)] = w(u) * std::complex<double>(std::cos(angle), std::sin(angle));
  }

  FilteredComponent fc;
  fc.config = cfg;
  fc.valid_start = ts.start_index() + h;
  fc.valid_end = ts.end_index() - h;
  fc.complex_values = kernels::correlate_valid(ts.values(), kernel);
  fc.real_values = reconstruct_real(fc);
  return fc;
}

std::vector<double> reconstruct_real(const FilteredComponent& fc) {
  std::vector<double> out(fc.complex_values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 2.0 * fc.complex_values[i].real();
  return out;
}

double transfer_gain(std::size_t m, std::size_t k, double delta) {
  check_window(m, k);
  const double s = std::sin(std::numbers::pi * delta);
  double ratio;
  if (std::abs(s) < 1e-12) {
    ratio = 1.0;  // removable singularity; odd m gives +-1, squared below
  } else {
    ratio = std::sin(std::numbers::pi * static_cast<double>(m) * delta) / (static_cast<double>(m) * s);
  }
  return std::pow(ratio * ratio, static_cast<double>(k));
}

WindowBound window_bound(const Rational& v1, const Rational& v2) {
  // 4 / |a/b - c/d| = 4bd / |ad - cb|
  const __int128 diff = static_cast<__int128>(v1.num) * v2.den - static_cast<__int128>(v2.num) * v1.den;
  if (diff == 0) throw InvalidInput("window selection needs two distinct frequencies");
  const __int128 num = static_cast<__int128>(4) * v1.den * v2.den;
  const __int128 den = diff < 0 ? -diff : diff;
  return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

std::size_t select_window(const Rational& v1, const Rational& v2) {
  const auto b = window_bound(v1, v2);
  return smallest_odd_above(b.num, b.den);
}

std::size_t widen_window(double m_star) {
  if (!(m_star > 0.0)) throw InvalidInput("m* must be positive");
  auto next = static_cast<std::size_t>(std::floor(1.5 * m_star)) + 1;
  if (next % 2 == 0) ++next;
  return next;
}

std::size_t widen_window(const WindowBound& m_star) {
  return smallest_odd_above(3 * m_star.num, 2 * m_star.den);
}

LeakageReport leakage_check(const FilteredComponent& fc, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw InvalidInput("leakage threshold must lie in (0, 1)");
  LeakageReport report;
  report.target_frequency = fc.config.v;

  const auto& y = fc.real_values;
  const bool all_zero = std::all_of(y.begin(), y.end(), [](double x) { return x == 0.0; });
  if (all_zero || y.size() < 4) {
    report.zero_energy = all_zero;
    return report;
  }

  const auto pg = periodogram(y);
  const double n_valid = static_cast<double>(y.size());
  // Small slack so bins sitting exactly two steps away count as on-target.
  const double radius = 2.0 / n_valid * (1.0 + 1e-9);

  std::size_t target = 0;
  for (std::size_t j = 1; j < pg.size(); ++j) {
    if (std::abs(pg.frequencies[j] - fc.config.v) < std::abs(pg.frequencies[target] - fc.config.v))
      target = j;
  }
  report.target_frequency = pg.frequencies[target];
  report.target_power = pg.power[target];

  for (std::size_t j = 0; j < pg.size(); ++j) {
    if (std::abs(pg.frequencies[j] - fc.config.v) <= radius) continue;
    if (pg.power[j] > report.max_off_target_power) {
      report.max_off_target_power = pg.power[j];
      report.max_off_target_frequency = pg.frequencies[j];
    }
  }
  report.pass = report.max_off_target_power <= threshold * report.target_power;
  return report;
}

}  // namespace vbpbb
