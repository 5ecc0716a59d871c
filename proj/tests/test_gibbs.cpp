#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gg/gibbs.hpp"
#include "gg/rng.hpp"

using namespace gg;

namespace {

InteractionFamily two_spin() { return make_custom({{0b11u, 1.0}}, 2, 1.0); }

DisorderSample fixed_sample(const InteractionFamily& f, std::vector<double> j) {
  DisorderSample s;
  s.couplings = std::move(j);
  (void)f;
  return s;
}

}  // namespace

TEST_CASE("beta = 0 gives the uniform measure") {
  auto f = make_sk(4);
  auto s = sample_disorder(f, 3, 0);
  GibbsTable t(f, s, 0.0);
  CHECK(t.log_z() == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(std::abs(t.internal_energy()) <= 1e-12);
  CHECK(std::abs(t.omega(0b11u)) <= 1e-14);
  CHECK(t.omega(0u) == 1.0);
}

TEST_CASE("two-spin system against hand enumeration") {
  auto f = two_spin();
  for (double j : {0.3, 1.0, -0.8}) {
    for (double beta : {0.4, 1.2}) {
      GibbsTable t(f, fixed_sample(f, {j}), beta);
      CHECK(t.log_z() == doctest::Approx(std::log(4.0 * std::cosh(beta * j))).epsilon(1e-14));
      CHECK(t.internal_energy() == doctest::Approx(-j * std::tanh(beta * j)).epsilon(1e-13));
      CHECK(t.omega(0b11u) == doctest::Approx(std::tanh(beta * j)).epsilon(1e-13));
    }
  }
}

TEST_CASE("probabilities sum to one and zero couplings give flat energies") {
  auto f = make_custom({{0b011u, 1.0}, {0b110u, 0.5}}, 3, 1.0);
  GibbsTable t(f, fixed_sample(f, {0.0, 0.0}), 1.5);
  CHECK(t.log_z() == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-14));
  double total = 0.0;
  for (double p : t.probabilities()) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("free energy definitions") {
  auto f = two_spin();
  GibbsTable t(f, fixed_sample(f, {1.0}), 1.0);
  CHECK(free_energy_log(t) == t.log_z());
  CHECK(free_energy(t) == doctest::Approx(-t.log_z()).epsilon(1e-14));
  GibbsTable zero(f, fixed_sample(f, {1.0}), 0.0);
  CHECK_THROWS_AS(free_energy(zero), std::domain_error);
}

TEST_CASE("internal energy equals minus the beta-derivative of logZ") {
  const double h = 1e-5;
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng::counter_hash(7, trial, 0) % 3);
    auto f = make_sk(n);
    auto s = sample_disorder(f, 17, trial);
    double beta = 0.1 + 1.4 * rng::u01(rng::counter_hash(7, trial, 1));
    EnergyTable e(f, s);
    double ap = GibbsTable(e, beta + h).log_z();
    double am = GibbsTable(e, beta - h).log_z();
    double u = GibbsTable(e, beta).internal_energy();
    CHECK(std::abs(-(ap - am) / (2.0 * h) - u) <= 1e-7);
  }
}

TEST_CASE("logZ is convex in beta") {
  auto f = make_sk(5);
  auto s = sample_disorder(f, 23, 4);
  EnergyTable e(f, s);
  const double h = 0.05;
  for (double beta = h; beta <= 2.0; beta += h) {
    double a0 = GibbsTable(e, beta - h).log_z();
    double a1 = GibbsTable(e, beta).log_z();
    double a2 = GibbsTable(e, beta + h).log_z();
    CHECK(a0 - 2.0 * a1 + a2 >= -1e-9);
  }
}

TEST_CASE("gauge symmetry: conjugating couplings at one site preserves logZ") {
  auto f = make_sk(4);
  auto s = sample_disorder(f, 29, 2);
  auto flipped = s;
  const std::uint32_t site = 0b0100u;
  for (std::size_t k = 0; k < f.subsets.size(); ++k)
    if (f.subsets[k].mask & site) flipped.couplings[k] = -flipped.couplings[k];
  GibbsTable t1(f, s, 0.9), t2(f, flipped, 0.9);
  CHECK(std::abs(t1.log_z() - t2.log_z()) <= 1e-12);
}

TEST_CASE("omega_product uses the parity xor rule") {
  auto f = make_custom({{0b011u, 1.0}, {0b110u, 0.5}}, 3, 1.0);
  auto s = sample_disorder(f, 31, 0);
  GibbsTable t(f, s, 0.8);
  std::uint32_t masks_same[2] = {0b011u, 0b011u};
  CHECK(t.omega_product(masks_same) == 1.0);
  std::uint32_t masks_mix[2] = {0b011u, 0b110u};
  CHECK(t.omega_product(masks_mix) == t.omega(0b101u));
}

TEST_CASE("draws are exact: chi-square at N=4 and stream determinism") {
  auto f = make_sk(4);
  auto s = sample_disorder(f, 37, 1);
  GibbsTable t(f, s, 1.0);
  const int n_draws = 100000;
  std::vector<int> counts(16, 0);
  rng::Stream stream{101, 0};
  for (int i = 0; i < n_draws; ++i) ++counts[t.draw(stream).bits];
  double chi2 = 0.0;
  for (int b = 0; b < 16; ++b) {
    double expect = t.probabilities()[static_cast<std::size_t>(b)] * n_draws;
    double d = counts[static_cast<std::size_t>(b)] - expect;
    chi2 += d * d / expect;
  }
  // 15 degrees of freedom, p > 1e-3
  CHECK(chi2 < 37.7);

  rng::Stream a{55, 0}, b{55, 0};
  CHECK(t.draw(a).bits == t.draw(b).bits);
}

TEST_CASE("large beta concentrates on the aligned states") {
  auto f = two_spin();
  GibbsTable t(f, fixed_sample(f, {1.0}), 20.0);
  // states 00 and 11 carry essentially all mass
  CHECK(t.probabilities()[0] + t.probabilities()[3] >= 1.0 - 1e-6);
}
