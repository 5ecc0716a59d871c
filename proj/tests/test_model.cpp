#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gg/model.hpp"
#include "gg/rng.hpp"

using namespace gg;

TEST_CASE("EA lattice bond counts and per-site variance") {
  auto f1 = make_ea(1, 6, true);
  CHECK(f1.volume == 6);
  CHECK(f1.subset_count() == 6);
  CHECK(f1.per_site_variance() == doctest::Approx(1.0).epsilon(1e-15));

  auto f2 = make_ea(2, 3, true);
  CHECK(f2.volume == 9);
  CHECK(f2.subset_count() == 18);
  CHECK(f2.per_site_variance() == doctest::Approx(2.0).epsilon(1e-15));

  auto open_chain = make_ea(1, 5, false);
  CHECK(open_chain.subset_count() == 4);

  // side 2 periodic would double-count each bond; kept as single bonds
  auto tiny = make_ea(1, 2, true);
  CHECK(tiny.subset_count() == 1);
}

TEST_CASE("SK preset variance convention") {
  auto f = make_sk(4);
  CHECK(f.subset_count() == 6);
  CHECK(f.subsets[0].variance == doctest::Approx(0.25));
  CHECK(f.per_site_variance() == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
  auto g = make_sk(4, true);
  CHECK(g.subsets[0].variance == doctest::Approx(1.0 / 16.0));
}

TEST_CASE("p-spin and REM subset counts") {
  auto p3 = make_p_spin(5, 3);
  CHECK(p3.subset_count() == 10);
  CHECK(p3.subsets[0].variance == doctest::Approx(std::pow(5.0, -3)));
  auto rem = make_rem(3);
  CHECK(rem.subset_count() == 7);
  CHECK(rem.subsets[0].variance == doctest::Approx(3.0 / 8.0));
  CHECK(rem.per_site_variance() == doctest::Approx(1.0 - 0.125).epsilon(1e-15));
}

TEST_CASE("long-range needs alpha above one half") {
  CHECK_THROWS_AS(make_long_range(0.5, 1, 8), std::invalid_argument);
  auto f = make_long_range(1.0, 1, 4, true);
  CHECK(f.subset_count() == 6);
  // nearest neighbors at distance 1 carry variance 1
  CHECK(f.subsets[0].variance == doctest::Approx(1.0));
}

TEST_CASE("family validation rejects malformed input") {
  CHECK_THROWS_AS(make_custom({{0u, 1.0}}, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_custom({{0b100u, 1.0}}, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_custom({{0b11u, -1.0}}, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_custom({{0b11u, 1.0}, {0b11u, 1.0}}, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_sk(1), std::invalid_argument);
  CHECK_THROWS_AS(make_rem(21), std::invalid_argument);
}

TEST_CASE("covariance: diagonal constancy and flip symmetry") {
  auto f = make_custom({{0b011u, 0.5}, {0b110u, 0.25}}, 3, 1.0);
  SpinConfiguration a{0b000u, 3}, b{0b010u, 3};
  auto caa = covariance(f, a, a);
  CHECK(caa.raw == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(caa.normalized == doctest::Approx(0.25).epsilon(1e-15));
  // flipping the shared site 1 flips both subset parities
  auto cab = covariance(f, a, b);
  CHECK(cab.raw == doctest::Approx(-0.75).epsilon(1e-15));
  CHECK(covariance(f, b, a).raw == cab.raw);
}

TEST_CASE("covariance satisfies the Schwartz inequality") {
  auto f = make_sk(5);
  for (int i = 0; i < 300; ++i) {
    SpinConfiguration s{static_cast<std::uint32_t>(rng::counter_hash(1, i, 0) % 32), 5};
    SpinConfiguration t{static_cast<std::uint32_t>(rng::counter_hash(1, i, 1) % 32), 5};
    double cst = covariance(f, s, t).raw;
    double css = covariance(f, s, s).raw;
    double ctt = covariance(f, t, t).raw;
    CHECK(cst * cst <= css * ctt + 1e-12);
  }
}

TEST_CASE("stability report compares per-site variance with cbar") {
  auto rep = stability_report(make_sk(10));
  CHECK(rep.per_site_variance == doctest::Approx(0.45));
  CHECK(rep.cbar == 1.0);
  CHECK(rep.satisfied);
  auto bad = stability_report(make_custom({{0b11u, 10.0}}, 2, 1.0));
  CHECK_FALSE(bad.satisfied);
}
