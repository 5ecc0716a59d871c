#include <algorithm>

#include "simd_common.hpp"

// Scalar reference kernels. They mirror the 4-lane block structure of the
// AVX2 variants: per block of four states the same multiplies and adds happen
// in the same lane order, so results match the vector path bit for bit.
namespace gg::simd::detail {
namespace {

void accumulate_signed_scalar(double* y, std::size_t n, double c, std::uint32_t mask) {
  if (n < 4) {
    accumulate_signed_small(y, n, c, mask);
    return;
  }
  double pat[4];
  for (std::uint32_t j = 0; j < 4; ++j) pat[j] = c * lane_sign(j, mask);
  std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t b = 0; b < n4; b += 4) {
    bool neg = lane_sign(static_cast<std::uint32_t>(b), mask) < 0.0;
    if (neg) {
      for (std::size_t j = 0; j < 4; ++j) y[b + j] += -pat[j];
    } else {
      for (std::size_t j = 0; j < 4; ++j) y[b + j] += pat[j];
    }
  }
  for (std::size_t s = n4; s < n; ++s)
    y[s] += c * lane_sign(static_cast<std::uint32_t>(s), mask);
}

double dot_signed_scalar(const double* p, std::size_t n, std::uint32_t mask) {
  if (n < 4) return dot_signed_small(p, n, mask);
  double pat[4];
  for (std::uint32_t j = 0; j < 4; ++j) pat[j] = lane_sign(j, mask);
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t b = 0; b < n4; b += 4) {
    bool neg = lane_sign(static_cast<std::uint32_t>(b), mask) < 0.0;
    if (neg) {
      for (std::size_t j = 0; j < 4; ++j) acc[j] += -pat[j] * p[b + j];
    } else {
      for (std::size_t j = 0; j < 4; ++j) acc[j] += pat[j] * p[b + j];
    }
  }
  double r = (acc[0] + acc[1]) + (acc[2] + acc[3]);
  for (std::size_t s = n4; s < n; ++s)
    r += lane_sign(static_cast<std::uint32_t>(s), mask) * p[s];
  return r;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  if (n < 4) return dot_small(a, b, n);
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4)
    for (std::size_t j = 0; j < 4; ++j) acc[j] += a[i + j] * b[i + j];
  double r = (acc[0] + acc[1]) + (acc[2] + acc[3]);
  for (std::size_t i = n4; i < n; ++i) r += a[i] * b[i];
  return r;
}

double max_scalar(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

}  // namespace

Kernels scalar_kernels() {
  return Kernels{accumulate_signed_scalar, dot_signed_scalar, dot_scalar, max_scalar};
}

}  // namespace gg::simd::detail
