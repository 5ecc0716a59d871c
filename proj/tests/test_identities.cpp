#include <doctest.h>

#include <cmath>

#include "gg/identities.hpp"
#include "gg/numeric.hpp"

using namespace gg;

namespace {

InteractionFamily pair_family() { return make_custom({{0b11u, 0.5}}, 2, 1.0); }
InteractionFamily chain_family() {
  return make_custom({{0b011u, 0.5}, {0b110u, 0.5}}, 3, 1.0);
}

}  // namespace

TEST_CASE("delta duals agree under quadrature") {
  auto f = chain_family();
  auto g = OverlapMonomial::parse("q[1,2]");
  auto scheme = Scheme::quadrature(40);
  auto d1 = delta1_dual(f, 0.7, 2, g, scheme, 1);
  CHECK(d1.discrepancy <= 1e-6);
  CHECK(d1.closed.mean != 0.0);
  auto d2 = delta2_dual(f, 0.7, 2, g, scheme, 1);
  CHECK(d2.discrepancy <= 1e-6);
}

TEST_CASE("delta duals agree under common-seed monte carlo") {
  auto f = pair_family();
  auto g = OverlapMonomial::parse("q[1,2]");
  auto scheme = Scheme::mc(400, 5);
  auto d1 = delta1_dual(f, 0.7, 2, g, scheme, 1);
  // the two paths only agree in disorder expectation, so compare statistically
  CHECK(d1.discrepancy <= 4.0 * (d1.closed.stderr_ + d1.definitional.stderr_));
}

TEST_CASE("constant observables give vanishing deltas") {
  auto f = chain_family();
  auto one = OverlapMonomial{};
  auto scheme = Scheme::quadrature(20);
  CHECK(std::abs(delta1_closed(f, 0.9, 3, one, scheme, 1).mean) <= 1e-12);
  CHECK(std::abs(delta2_closed(f, 0.9, 3, one, scheme, 1).mean) <= 1e-12);
  CHECK(delta1_closed(f, 0.0, 2, OverlapMonomial::parse("q[1,2]"), scheme, 1).mean == 0.0);
}

TEST_CASE("self-overlap terms cancel exactly") {
  auto f = chain_family();
  auto g = OverlapMonomial::parse("q[1,2]");
  auto scheme = Scheme::quadrature(20);
  double with = delta1_closed(f, 0.8, 2, g, scheme, 1, true).mean;
  double without = delta1_closed(f, 0.8, 2, g, scheme, 1, false).mean;
  CHECK(std::abs(with - without) <= 1e-12);
}

TEST_CASE("sum rule holds under quadrature") {
  auto f = chain_family();
  auto g = OverlapMonomial::parse("q[1,2]");
  auto rep = sum_rule_check(f, 0.6, 2, g, Scheme::quadrature(40), 1);
  CHECK(rep.residual <= 1e-6);
}

TEST_CASE("residual curve integrands match the deltas algebraically") {
  auto f = pair_family();
  auto g = OverlapMonomial::parse("q[1,2]");
  auto scheme = Scheme::quadrature(30);
  auto [c1, c2] = gg_residuals(f, 2, g, 0.3, 1.1, 5, Measure::d_beta2, scheme, 1);
  for (std::size_t i = 0; i < c1.betas.size(); ++i) {
    double beta = c1.betas[i];
    double d1 = delta1_closed(f, beta, 2, g, scheme, 1).mean;
    double d2 = delta2_closed(f, beta, 2, g, scheme, 1).mean;
    CHECK(std::abs(c1.values[i] - (-d1 / beta)) <= 1e-10);
    CHECK(std::abs(c2.values[i] - (-d2 / (beta * 2.0))) <= 1e-10);
  }
}

TEST_CASE("residual curves integrate consistently with the composite rule") {
  auto f = pair_family();
  auto scheme = Scheme::quadrature(20);
  auto [r1, r2] = classical_identities(f, 0.2, 1.0, 5, Measure::d_beta2, scheme, 1);
  CHECK(r1.betas.size() == 5);
  // grid uniform in beta^2
  double t0 = r1.betas[0] * r1.betas[0];
  double t1 = r1.betas[1] * r1.betas[1];
  double t2 = r1.betas[2] * r1.betas[2];
  CHECK(t1 - t0 == doctest::Approx(t2 - t1).epsilon(1e-12));
  auto w = integration_weights(5, t1 - t0);
  CHECK(r1.integral == doctest::Approx(weighted_sum(w, r1.values)).epsilon(1e-14));
  CHECK(r2.integral == doctest::Approx(weighted_sum(w, r2.values)).epsilon(1e-14));
}

TEST_CASE("classical residuals shrink as couplings vanish") {
  // with all variances zero every overlap moment vanishes
  auto dead = make_custom({{0b11u, 0.0}}, 2, 1.0);
  auto [r1, r2] = classical_identities(dead, 0.2, 1.0, 3, Measure::d_beta, Scheme::quadrature(10), 1);
  for (double v : r1.values) CHECK(v == 0.0);
  for (double v : r2.values) CHECK(v == 0.0);
}

TEST_CASE("energy identity first moment at the two-spin system") {
  auto f = make_custom({{0b11u, 1.0}}, 2, 1.0);
  for (double beta : {0.0, 0.4}) {
    auto rep = internal_energy_identity_check(f, beta, 40);
    CHECK(rep.residual <= 1e-8);
    if (beta == 0.0) CHECK(std::abs(rep.lhs) <= 1e-12);
  }
}

TEST_CASE("energy identity second moment needs the diagonal completion") {
  auto f = make_custom({{0b11u, 1.0}}, 2, 1.0);
  auto rep = internal_energy_second_moment_check(f, 0.5, 40);
  CHECK(rep.residual <= 1e-7);
  // the six-term double sum alone misses the diagonal variance term
  CHECK(rep.residual_as_printed > 1e-2);
  CHECK(std::abs((rep.rhs - rep.rhs_as_printed)) > 1e-2);
}

TEST_CASE("variance bounds on a small SK system") {
  auto f = make_sk(6);
  auto fa = free_energy_variance(f, 0.8, 400, 21, 1);
  CHECK(fa.variance >= 0.0);
  CHECK(fa.ci_lo <= fa.variance);
  CHECK(fa.variance <= fa.ci_hi);
  CHECK(fa.bound == doctest::Approx(6.0 * (0.25 * 0.64 + 35.0 / 36.0 * 0.64 * 0.64)));
  CHECK(fa.satisfied);
  auto iu = internal_energy_variance(f, 0.8, 400, 21, 1);
  CHECK(iu.bound == doctest::Approx(15.0 * 0.64));
  CHECK(iu.satisfied);
}

TEST_CASE("moment table statistics are deterministic and bootstrap is ordered") {
  auto f = make_sk(4);
  std::vector<double> betas = {0.3, 0.6, 0.9, 1.2, 1.5};
  auto table = compute_moment_table(f, betas, 200, 31, 1);
  auto again = compute_moment_table(f, betas, 200, 31, 4);
  CHECK(table.data == again.data);

  auto stat = classical_integral_stat(table, 1, Measure::d_beta2, 31);
  CHECK(stat.value > 0.0);
  CHECK(stat.ci_lo <= stat.ci_hi);
  auto gg1 = gg_integral_stat(table, 1, Measure::d_beta2, 31);
  CHECK(gg1.value >= 0.0);
  CHECK(gg1.ci_lo <= gg1.ci_hi);
}

TEST_CASE("measure choice moves the grid") {
  auto f = pair_family();
  auto scheme = Scheme::quadrature(10);
  auto [a, b] = classical_identities(f, 0.2, 1.0, 3, Measure::d_beta, scheme, 1);
  CHECK(a.betas[1] == doctest::Approx(0.6));
  auto [c, d] = classical_identities(f, 0.2, 1.0, 3, Measure::d_beta2, scheme, 1);
  CHECK(c.betas[1] == doctest::Approx(std::sqrt((0.04 + 1.0) / 2.0)));
}
