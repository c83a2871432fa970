#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace vbpbb {

/// Frequency written as j/P cycles per day. Kept unreduced: the denominator
/// doubles as the fundamental period, so "3/30" and "1/10" are different
/// components.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  /// Exact comparison by cross-multiplication.
  friend bool operator==(const Rational& a, const Rational& b) noexcept;
  friend bool less(const Rational& a, const Rational& b) noexcept;
};

/// Parses "j/P" or a bare integer "j". Throws InvalidInput.
Rational parse_rational(std::string_view text);

}  // namespace vbpbb
