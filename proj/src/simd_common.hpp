#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>

namespace gg::simd::detail {

inline double lane_sign(std::uint32_t s, std::uint32_t mask) {
  return (std::popcount(s & mask) & 1u) ? -1.0 : 1.0;
}

// Shared small-n fallbacks so scalar and vector paths agree exactly.
inline void accumulate_signed_small(double* y, std::size_t n, double c, std::uint32_t mask) {
  for (std::size_t s = 0; s < n; ++s) y[s] += c * lane_sign(static_cast<std::uint32_t>(s), mask);
}

inline double dot_signed_small(const double* p, std::size_t n, std::uint32_t mask) {
  double acc = 0.0;
  for (std::size_t s = 0; s < n; ++s) acc += lane_sign(static_cast<std::uint32_t>(s), mask) * p[s];
  return acc;
}

inline double dot_small(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

struct Kernels {
  void (*accumulate_signed)(double*, std::size_t, double, std::uint32_t);
  double (*dot_signed)(const double*, std::size_t, std::uint32_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*max_value)(const double*, std::size_t);
};

Kernels scalar_kernels();
Kernels avx2_kernels();  // only valid if the CPU supports AVX2
bool cpu_has_avx2();

}  // namespace gg::simd::detail
