#include "gg/simd.hpp"

#include <stdexcept>

#include "simd_common.hpp"

namespace gg::simd {
namespace {

detail::Kernels g_kernels = detail::scalar_kernels();
Isa g_isa = Isa::scalar;
bool g_initialized = false;

void ensure_init() {
  if (g_initialized) return;
  if (detail::cpu_has_avx2()) {
    g_kernels = detail::avx2_kernels();
    g_isa = Isa::avx2;
  }
  g_initialized = true;
}

}  // namespace

Isa best_isa() { return detail::cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

Isa active_isa() {
  ensure_init();
  return g_isa;
}

bool isa_supported(Isa isa) { return isa == Isa::scalar || detail::cpu_has_avx2(); }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::runtime_error("simd: requested ISA not supported");
  g_kernels = isa == Isa::avx2 ? detail::avx2_kernels() : detail::scalar_kernels();
  g_isa = isa;
  g_initialized = true;
}

void accumulate_signed(double* y, std::size_t n, double c, std::uint32_t mask) {
  ensure_init();
  g_kernels.accumulate_signed(y, n, c, mask);
}

double dot_signed(const double* p, std::size_t n, std::uint32_t mask) {
  ensure_init();
  return g_kernels.dot_signed(p, n, mask);
}

double dot(const double* a, const double* b, std::size_t n) {
  ensure_init();
  return g_kernels.dot(a, b, n);
}

double max_value(const double* x, std::size_t n) {
  ensure_init();
  return g_kernels.max_value(x, n);
}

}  // namespace gg::simd
