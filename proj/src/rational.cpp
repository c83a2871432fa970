#include "vbpbb/rational.hpp"

#include <charconv>

#include "vbpbb/error.hpp"

namespace vbpbb {

std::string Rational::str() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

bool operator==(const Rational& a, const Rational& b) noexcept {
  return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
}

bool less(const Rational& a, const Rational& b) noexcept {
  // Denominators are positive by construction.
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw InvalidInput("not a rational frequency: '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  Rational r;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    r.num = parse_int(text.substr(0, slash), text);
    r.den = parse_int(text.substr(slash + 1), text);
  } else {
    r.num = parse_int(text, text);
    r.den = 1;
  }
  if (r.den <= 0) throw InvalidInput("frequency denominator must be positive: '" + std::string(text) + "'");
  if (r.num < 0) throw InvalidInput("frequency must be nonnegative: '" + std::string(text) + "'");
  return r;
}

}  // namespace vbpbb
