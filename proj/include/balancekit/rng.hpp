#pragma once

#include <cstdint>
#include <random>

namespace balancekit {

// Seeded generator with a fixed, implementation-independent draw scheme.
// std::mt19937_64 has a fully specified output sequence; mapping raw words
// to uniforms ourselves (instead of std::uniform_*_distribution, whose
// algorithm is implementation-defined) keeps traces reproducible across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform in {0, ..., n-1} via 128-bit multiply-shift.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(eng_()) * n) >> 64);
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace balancekit
