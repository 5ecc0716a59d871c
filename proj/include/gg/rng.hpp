#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

// Counter-based random numbers: every draw is a pure function of
// (seed, counter words), so parallel generation needs no shared state and
// any (seed, index) pair regenerates bit-identical values.
namespace gg::rng {

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = mix64(seed ^ 0x632be59bd9b4e019ULL);
  z = mix64(z ^ mix64(a));
  return mix64(z ^ mix64(b));
}

// Uniform in (0, 1].
inline double u01_open(std::uint64_t h) {
  return (static_cast<double>(h >> 11) + 1.0) * 0x1p-53;
}

// Uniform in [0, 1).
inline double u01(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1p-53; }

// Standard normal via Box-Muller on two counter hashes.
inline double gaussian(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  double u1 = u01_open(counter_hash(seed, a, 2 * b));
  double u2 = u01(counter_hash(seed, a, 2 * b + 1));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Sequential stream on top of the same hash; copying a Stream replays it.
struct Stream {
  std::uint64_t seed = 0;
  std::uint64_t counter = 0;

  std::uint64_t next_u64() { return counter_hash(seed, 0x5347u, counter++); }
  double next_u01() { return u01(next_u64()); }
};

}  // namespace gg::rng
