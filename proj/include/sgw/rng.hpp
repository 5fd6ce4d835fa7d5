// Seeded hashing draws. Test families must be bit-reproducible across runs
// and platforms, so no std:: distributions are used anywhere.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "sgw/freq.hpp"

namespace sgw::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double unitDouble(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

inline std::uint64_t hashIndex(std::uint64_t seed, const FreqIndex& k) {
  std::uint64_t h = splitmix64(seed ^ 0x5bf03635033b4b15ULL);
  for (int v : k) h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
  return h;
}

// e^{2πi u} with u deterministic in (seed, k).
inline Complex unimodular(std::uint64_t seed, const FreqIndex& k) {
  double theta = 2.0 * std::numbers::pi * unitDouble(hashIndex(seed, k));
  return Complex(std::cos(theta), std::sin(theta));
}

struct Stream {
  std::uint64_t state;
  explicit Stream(std::uint64_t seed) : state(splitmix64(seed ^ 0x8f2d3a5b1c4e6d7fULL)) {}
  std::uint64_t next() {
    state = splitmix64(state);
    return state;
  }
  double nextUnit() { return unitDouble(next()); }
  // inclusive bounds
  int nextInt(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Complex nextPhase() {
    double theta = 2.0 * std::numbers::pi * nextUnit();
    return Complex(std::cos(theta), std::sin(theta));
  }
};

}  // namespace sgw::rng
