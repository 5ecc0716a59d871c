#pragma once

#include <cstddef>
#include <cstdint>

// Inner-loop kernels for the 2^N state enumeration. Each kernel exists as a
// scalar reference and an AVX2 variant selected once at startup. The scalar
// versions use the same 4-lane blocked accumulation as the vector ones, so
// both paths produce bit-identical results (no FMA contraction, no
// reassociation).
namespace gg::simd {

enum class Isa { scalar, avx2 };

Isa best_isa();
Isa active_isa();
// Throws std::runtime_error if the ISA is not supported on this machine.
void set_isa(Isa isa);
bool isa_supported(Isa isa);

// y[s] += c * parity(s & mask) for s in [0, n), parity mapped to +-1.
void accumulate_signed(double* y, std::size_t n, double c, std::uint32_t mask);

// sum_s parity(s & mask) * p[s].
double dot_signed(const double* p, std::size_t n, std::uint32_t mask);

// sum_i a[i] * b[i], blocked.
double dot(const double* a, const double* b, std::size_t n);

// max over n values, n >= 1.
double max_value(const double* x, std::size_t n);

}  // namespace gg::simd
