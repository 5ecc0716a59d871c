#include <doctest.h>

#include <cmath>
#include <vector>

#include "gg/disorder.hpp"
#include "gg/numeric.hpp"

using namespace gg;

TEST_CASE("sampling is deterministic and respects variances") {
  auto f = make_rem(3);
  auto a = sample_disorder(f, 42, 7);
  auto b = sample_disorder(f, 42, 7);
  CHECK(a.couplings == b.couplings);
  auto c = sample_disorder(f, 42, 8);
  CHECK(a.couplings != c.couplings);

  // empirical variance of one REM(3) coupling, Delta^2 = 3/8
  const int n = 100000;
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = sample_disorder(f, 5, i).couplings[2];
  auto ms = mean_stderr(xs);
  CHECK(std::abs(ms.mean) <= 4.0 * ms.stderr_);
  double var = sample_variance(xs);
  // variance of the variance estimate ~ 2 var^2 / n
  CHECK(std::abs(var - 0.375) <= 4.0 * 0.375 * std::sqrt(2.0 / n));
}

TEST_CASE("zero-variance couplings sample as exact zeros") {
  auto f = make_custom({{0b01u, 0.0}, {0b11u, 1.0}}, 2, 1.0);
  auto s = sample_disorder(f, 1, 3);
  CHECK(s.couplings[0] == 0.0);
  CHECK(s.couplings[1] != 0.0);
}

TEST_CASE("quenched average of constants and Gaussian moments") {
  auto f = make_custom({{0b11u, 1.0}}, 2, 1.0);
  auto one = quenched_average(f, Scheme::quadrature(20), 1,
                              [](const DisorderSample&) { return 1.0; });
  CHECK(one.mean == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(one.stderr_ == 0.0);
  auto m2 = quenched_average(f, Scheme::quadrature(20), 1,
                             [](const DisorderSample& s) { return s.couplings[0] * s.couplings[0]; });
  CHECK(m2.mean == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quadrature tanh^2 matches the frozen adaptive-integration value") {
  auto f = make_custom({{0b11u, 1.0}}, 2, 1.0);
  auto r = quenched_average(f, Scheme::quadrature(40), 1, [](const DisorderSample& s) {
    double t = std::tanh(0.5 * s.couplings[0]);
    return t * t;
  });
  CHECK(r.mean == doctest::Approx(2.0 * 0.08675807171618591).epsilon(1e-10));
}

TEST_CASE("monte-carlo reduction is bit-identical across worker counts") {
  auto f = make_sk(4);
  auto scheme = Scheme::mc(256, 11);
  auto fn = [](const DisorderSample& s, double* out) {
    double acc = 0.0;
    for (double j : s.couplings) acc += std::tanh(j);
    out[0] = acc;
    out[1] = acc * acc;
  };
  auto ref = quenched_average_vec(f, scheme, 2, 1, fn);
  for (int w : {2, 8}) {
    auto got = quenched_average_vec(f, scheme, 2, w, fn);
    CHECK(got.estimates[0].mean == ref.estimates[0].mean);
    CHECK(got.estimates[1].mean == ref.estimates[1].mean);
    CHECK(got.mean_covariance == ref.mean_covariance);
  }
}

TEST_CASE("quadrature chunking is bit-identical across worker counts") {
  auto f = make_custom({{0b011u, 0.5}, {0b110u, 0.5}}, 3, 1.0);
  auto fn = [](const DisorderSample& s, double* out) {
    out[0] = std::tanh(s.couplings[0] + 0.3 * s.couplings[1]);
  };
  auto ref = quenched_average_vec(f, Scheme::quadrature(80), 1, 1, fn);
  auto got = quenched_average_vec(f, Scheme::quadrature(80), 1, 8, fn);
  CHECK(got.estimates[0].mean == ref.estimates[0].mean);
}

TEST_CASE("monte-carlo agrees with quadrature and stderr scales as 1/sqrt(n)") {
  auto f = make_custom({{0b11u, 1.0}}, 2, 1.0);
  auto fn = [](const DisorderSample& s) { return std::tanh(s.couplings[0]); };
  auto exact = quenched_average(f, Scheme::quadrature(40), 1, fn);
  auto mc = quenched_average(f, Scheme::mc(4000, 2), 1, fn);
  CHECK(std::abs(mc.mean - exact.mean) <= 4.0 * mc.stderr_);

  // average ratio of stderrs over independent seeds approaches sqrt(2)
  double ratio = 0.0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    auto small = quenched_average(f, Scheme::mc(500, 100 + t), 1, fn);
    auto big = quenched_average(f, Scheme::mc(1000, 200 + t), 1, fn);
    ratio += small.stderr_ / big.stderr_;
  }
  ratio /= trials;
  CHECK(ratio == doctest::Approx(std::sqrt(2.0)).epsilon(0.10));
}

TEST_CASE("quadrature feasibility cap") {
  auto sk10 = make_sk(10);  // 45 couplings
  CHECK_FALSE(quadrature_feasible(sk10, 20));
  CHECK(quadrature_node_count(make_custom({{0b11u, 1.0}}, 2, 1.0), 20) == 20);
  // zero-variance couplings do not count as quadrature dimensions
  auto degen = make_custom({{0b01u, 0.0}, {0b11u, 1.0}}, 2, 1.0);
  CHECK(quadrature_node_count(degen, 20) == 20);
}

TEST_CASE("wick residuals for polynomial and smooth test functions") {
  auto f = make_custom({{0b11u, 1.0}}, 2, 1.0);
  WickFn identity{"x", [](std::span<const double> j) { return j[0]; }};
  CHECK(wick_residual(f, identity, 40) <= 1e-10);
  WickFn square{"x^2", [](std::span<const double> j) { return j[0] * j[0]; }};
  CHECK(wick_residual(f, square, 40) <= 1e-10);
  for (const auto& psi : builtin_wick_suite(f, 0.7)) CHECK(wick_residual(f, psi, 40) <= 1e-6);
}
