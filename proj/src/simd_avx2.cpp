#include "simd_common.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace gg::simd::detail {
namespace {

__attribute__((target("avx2"))) void accumulate_signed_avx2(double* y, std::size_t n, double c,
                                                            std::uint32_t mask) {
  if (n < 4) {
    accumulate_signed_small(y, n, c, mask);
    return;
  }
  alignas(32) double pat[4];
  for (std::uint32_t j = 0; j < 4; ++j) pat[j] = c * lane_sign(j, mask);
  __m256d pos = _mm256_load_pd(pat);
  __m256d neg = _mm256_sub_pd(_mm256_setzero_pd(), pos);
  std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t b = 0; b < n4; b += 4) {
    __m256d add = lane_sign(static_cast<std::uint32_t>(b), mask) < 0.0 ? neg : pos;
    __m256d v = _mm256_loadu_pd(y + b);
    _mm256_storeu_pd(y + b, _mm256_add_pd(v, add));
  }
  for (std::size_t s = n4; s < n; ++s)
    y[s] += c * lane_sign(static_cast<std::uint32_t>(s), mask);
}

__attribute__((target("avx2"))) double dot_signed_avx2(const double* p, std::size_t n,
                                                       std::uint32_t mask) {
  if (n < 4) return dot_signed_small(p, n, mask);
  alignas(32) double pat[4];
  for (std::uint32_t j = 0; j < 4; ++j) pat[j] = lane_sign(j, mask);
  __m256d pos = _mm256_load_pd(pat);
  __m256d neg = _mm256_sub_pd(_mm256_setzero_pd(), pos);
  __m256d acc = _mm256_setzero_pd();
  std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t b = 0; b < n4; b += 4) {
    __m256d s = lane_sign(static_cast<std::uint32_t>(b), mask) < 0.0 ? neg : pos;
    acc = _mm256_add_pd(acc, _mm256_mul_pd(s, _mm256_loadu_pd(p + b)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double r = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (std::size_t s = n4; s < n; ++s)
    r += lane_sign(static_cast<std::uint32_t>(s), mask) * p[s];
  return r;
}

__attribute__((target("avx2"))) double dot_avx2(const double* a, const double* b, std::size_t n) {
  if (n < 4) return dot_small(a, b, n);
  __m256d acc = _mm256_setzero_pd();
  std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double r = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (std::size_t i = n4; i < n; ++i) r += a[i] * b[i];
  return r;
}

__attribute__((target("avx2"))) double max_avx2(const double* x, std::size_t n) {
  if (n < 8) {
    double m = x[0];
    for (std::size_t i = 1; i < n; ++i) m = m < x[i] ? x[i] : m;
    return m;
  }
  __m256d acc = _mm256_loadu_pd(x);
  std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 4; i < n4; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double m = lanes[0];
  for (int j = 1; j < 4; ++j) m = m < lanes[j] ? lanes[j] : m;
  for (std::size_t i = n4; i < n; ++i) m = m < x[i] ? x[i] : m;
  return m;
}

}  // namespace

Kernels avx2_kernels() {
  return Kernels{accumulate_signed_avx2, dot_signed_avx2, dot_avx2, max_avx2};
}

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

}  // namespace gg::simd::detail

#else

namespace gg::simd::detail {
Kernels avx2_kernels() { return scalar_kernels(); }
bool cpu_has_avx2() { return false; }
}  // namespace gg::simd::detail

#endif
