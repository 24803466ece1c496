#pragma once

#include <cstdint>
#include <random>

namespace irs {

namespace detail {

// SplitMix64 finalizer; used only to derive child seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Seedable, splittable random source. Every sampling routine takes one
/// explicitly; `split(i)` yields an independent stream for task i so that
/// parallel and sequential runs draw identical values.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(detail::mix64(seed)) {}

  std::uint64_t seed() const { return seed_; }

  Rng split(std::uint64_t index) const {
    return Rng(detail::mix64(seed_ ^ detail::mix64(index + 0x632be59bd9b4e019ULL)));
  }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
    return dist(engine_);
  }

  result_type operator()() { return engine_(); }
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace irs
