#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "vbpbb/rational.hpp"
#include "vbpbb/series.hpp"

namespace vbpbb {

using BigInt = boost::multiprecision::cpp_int;

struct KzftConfig {
  std::size_t m = 1;  // window length, odd
  std::size_t k = 1;  // iterations
  double v = 0.0;     // center frequency, cycles per step

  /// Observations lost at each end: k(m-1)/2.
  std::size_t half_width() const noexcept { return k * (m - 1) / 2; }
  std::size_t kernel_length() const noexcept { return k * (m - 1) + 1; }
};

/// Integer coefficients of (1 + z + ... + z^{m-1})^k, exact. Length k(m-1)+1.
std::vector<BigInt> kz_integer_coefficients(std::size_t m, std::size_t k);

/// KZ weights a_u / m^k for u = -k(m-1)/2 .. k(m-1)/2. Symmetric, positive,
/// summing to one.
class CoefficientVector {
 public:
  CoefficientVector(std::size_t m, std::size_t k);

  std::size_t m() const noexcept { return m_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t half_width() const noexcept { return (coeffs_.size() - 1) / 2; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::span<const double> values() const noexcept { return coeffs_; }
  /// Weight at lag u, |u| <= half_width().
  double operator()(std::int64_t u) const {
    return coeffs_[static_cast<std::size_t>(u + static_cast<std::int64_t>(half_width()))];
  }

 private:
  std::size_t m_;
  std::size_t k_;
  std::vector<double> coeffs_;
};

CoefficientVector kz_coefficients(std::size_t m, std::size_t k);

/// KZFT output over the valid range [valid_start, valid_end) of day indices.
struct FilteredComponent {
  KzftConfig config;
  std::int64_t valid_start = 0;
  std::int64_t valid_end = 0;
  std::vector<std::complex<double>> complex_values;
  std::vector<double> real_values;

  std::size_t size() const noexcept { return complex_values.size(); }
};

/// complex(t) = sum_u w_u exp(-i 2 pi v u) x(t + u), t over the valid range.
/// Throws InsufficientData when n <= k(m-1).
FilteredComponent kzft_apply(const TimeSeries& ts, const KzftConfig& cfg);

/// Real component 2 Re(complex(t)); unit gain for a cosine at v.
std::vector<double> reconstruct_real(const FilteredComponent& fc);

/// Energy transfer (sin(pi m d) / (m sin(pi d)))^{2k}; 1 at d = 0 mod 1.
double transfer_gain(std::size_t m, std::size_t k, double delta);

/// m* = 4 / |v1 - v2|, exact.
struct WindowBound {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
};
WindowBound window_bound(const Rational& v1, const Rational& v2);

/// Smallest odd integer strictly greater than 4/|v1 - v2|.
std::size_t select_window(const Rational& v1, const Rational& v2);

/// Smallest odd integer strictly greater than 1.5 m*.
std::size_t widen_window(double m_star);
std::size_t widen_window(const WindowBound& m_star);

struct LeakageReport {
  bool pass = true;
  bool zero_energy = false;
  double target_frequency = 0.0;
  double target_power = 0.0;
  double max_off_target_frequency = 0.0;
  double max_off_target_power = 0.0;
};

/// Periodogram of the real component: passes when no bin farther than
/// 2/n_valid from v carries more than threshold times the power of the bin
/// nearest v.
LeakageReport leakage_check(const FilteredComponent& fc, double threshold);

}  // namespace vbpbb
