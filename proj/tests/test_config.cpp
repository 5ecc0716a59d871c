#include <doctest.h>

#include "gg/config.hpp"

using namespace gg;

namespace {

const char* kSample = R"(
# full example
[family]
preset = sk
n = 6

[grid]
beta1 = 0.2
beta2 = 1.5
points = 21
measure = dbeta2

[observable]
g = q[1,2]
replicas = 2

[scheme]
method = mc
samples = 500
seed = 7

[checks]
run = stability, classical, gg

[output]
dir = out
workers = 2
)";

}  // namespace

TEST_CASE("full config parses") {
  auto cfg = parse_config(kSample);
  CHECK(cfg.family.preset == "sk");
  CHECK(cfg.family.n == 6);
  CHECK(cfg.beta1 == 0.2);
  CHECK(cfg.beta2 == 1.5);
  CHECK(cfg.grid_points == 21);
  CHECK(cfg.measure == Measure::d_beta2);
  CHECK(cfg.replicas == 2);
  CHECK(cfg.observables == std::vector<std::string>{"q[1,2]"});
  CHECK(cfg.scheme.method == Method::monte_carlo);
  CHECK(cfg.scheme.n_samples == 500);
  CHECK(cfg.scheme.seed == 7);
  CHECK(cfg.checks.size() == 3);
  CHECK(cfg.out_dir == "out");
  CHECK(cfg.workers == 2);
  validate_config(cfg);
}

TEST_CASE("custom family with repeated subset keys") {
  auto cfg = parse_config(R"(
[family]
preset = custom
volume = 3
cbar = 1.0
subset = 0,1 : 0.5
subset = 1,2 : 0.25
)");
  CHECK(cfg.family.subsets.size() == 2);
  CHECK(cfg.family.subsets[0].mask == 0b011u);
  CHECK(cfg.family.subsets[1].mask == 0b110u);
  auto fam = build_family(cfg.family);
  CHECK(fam.volume == 3);
  CHECK(fam.total_variance() == doctest::Approx(0.75));
}

TEST_CASE("grammar errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_config("x = 1\n"), doctest::Contains("line 1"), ConfigError);
  CHECK_THROWS_AS(parse_config("[family]\npreset\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[family]\nbogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[nope]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[grid]\npoints = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[family]\nsubset = : 1.0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[checks]\nrun = bogus\n"), ConfigError);
}

TEST_CASE("validation names the offending replica index") {
  auto cfg = parse_config(kSample);
  cfg.observables = {"q[1,3]"};
  cfg.replicas = 2;
  CHECK_THROWS_WITH_AS(validate_config(cfg), doctest::Contains("replica index 3"), ConfigError);
}

TEST_CASE("validation rejects bad schemes and grids") {
  auto cfg = parse_config(kSample);
  cfg.scheme.n_samples = 1;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg = parse_config(kSample);
  cfg.beta2 = cfg.beta1;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg = parse_config(kSample);
  cfg.grid_points = 2;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
}

TEST_CASE("family presets build from specs") {
  FamilySpec spec;
  spec.preset = "ea";
  spec.d = 2;
  spec.side = 3;
  auto fam = build_family(spec);
  CHECK(fam.volume == 9);
  CHECK(spec.descriptor() == "ea(d=2;L=3;periodic)");

  spec.preset = "long_range";
  spec.alpha = 0.75;
  spec.d = 1;
  spec.side = 8;
  CHECK(build_family(spec).volume == 8);

  spec.preset = "rem";
  spec.n = 4;
  CHECK(build_family(spec).subset_count() == 15);
}

TEST_CASE("sk variance convention switch") {
  auto cfg = parse_config("[family]\npreset = sk\nn = 4\nsk_variance_convention = stddev\n");
  auto fam = build_family(cfg.family);
  CHECK(fam.subsets[0].variance == doctest::Approx(1.0 / 16.0));
}
