#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace vbpbb {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Child stream seed for (parent, index). Used for replicate b of a component,
/// trial i of a Monte Carlo run, and so on; independent of evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(parent) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

/// FNV-1a of a label, so component streams are keyed by name.
constexpr std::uint64_t label_key(std::string_view label) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

/// Uniform index source over [0, bound). Satisfies IndexSource.
class StreamRng {
 public:
  explicit StreamRng(std::uint64_t seed) : engine_(seed) {}

  std::size_t draw(std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(engine_);
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

template <class T>
concept IndexSource = requires(T& g, std::size_t bound) {
  { g.draw(bound) } -> std::convertible_to<std::size_t>;
};

}  // namespace vbpbb
