#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gg/simd.hpp"

using namespace gg;

namespace {

struct IsaGuard {
  simd::Isa saved = simd::active_isa();
  ~IsaGuard() { simd::set_isa(saved); }
};

bool have_avx2() { return simd::isa_supported(simd::Isa::avx2); }

std::vector<double> random_vec(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

}  // namespace

TEST_CASE("scalar and avx2 kernels are bit-identical") {
  if (!have_avx2()) return;
  IsaGuard guard;
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 16u, 64u, 1024u, 4096u}) {
    auto p = random_vec(n, static_cast<unsigned>(n));
    auto q = random_vec(n, static_cast<unsigned>(n) + 1000);
    for (std::uint32_t mask : {0x3u, 0x5u, 0x81u, 0xfffu}) {
      simd::set_isa(simd::Isa::scalar);
      double ds = simd::dot_signed(p.data(), n, mask);
      auto ys = p;
      simd::accumulate_signed(ys.data(), n, 0.37, mask);
      double dots = simd::dot(p.data(), q.data(), n);
      double maxs = simd::max_value(p.data(), n);

      simd::set_isa(simd::Isa::avx2);
      double dv = simd::dot_signed(p.data(), n, mask);
      auto yv = p;
      simd::accumulate_signed(yv.data(), n, 0.37, mask);
      double dotv = simd::dot(p.data(), q.data(), n);
      double maxv = simd::max_value(p.data(), n);

      CHECK(ds == dv);
      CHECK(ys == yv);
      CHECK(dots == dotv);
      CHECK(maxs == maxv);
    }
  }
}

TEST_CASE("dot_signed equals the direct parity sum") {
  const std::size_t n = 256;
  auto p = random_vec(n, 9);
  const std::uint32_t mask = 0x2d;
  double direct = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    int bits = __builtin_popcount(static_cast<unsigned>(s) & mask);
    direct += (bits & 1 ? -1.0 : 1.0) * p[s];
  }
  CHECK(simd::dot_signed(p.data(), n, mask) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("accumulate_signed adds the signed constant") {
  const std::size_t n = 64;
  std::vector<double> y(n, 1.0);
  simd::accumulate_signed(y.data(), n, 2.0, 0x1);
  for (std::size_t s = 0; s < n; ++s) CHECK(y[s] == (s & 1 ? -1.0 : 3.0));
}

TEST_CASE("max_value finds the maximum") {
  auto x = random_vec(321, 17);
  x[200] = 99.0;
  CHECK(simd::max_value(x.data(), x.size()) == 99.0);
  double one = -5.0;
  CHECK(simd::max_value(&one, 1) == -5.0);
}
