#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gg/disorder.hpp"
#include "gg/identities.hpp"
#include "gg/model.hpp"
#include "gg/observables.hpp"

namespace gg {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FamilySpec {
  std::string preset = "sk";  // sk | ea | long_range | p_spin | rem | custom
  int n = 4;                  // sk / p_spin / rem
  int p = 3;                  // p_spin
  int d = 1;                  // ea / long_range
  int side = 4;
  bool periodic = true;
  double alpha = 0.75;              // long_range
  bool sk_stddev_convention = false;
  int volume = 0;                   // custom
  double cbar = 0.0;                // custom
  std::vector<Subset> subsets;      // custom

  std::string descriptor() const;
};

enum class CheckKind {
  stability,
  classical,
  gg,
  delta_dual,
  wick,
  energy_identities,
  variance_bounds,
};

std::string check_name(CheckKind kind);

struct RunConfig {
  FamilySpec family;
  double beta1 = 0.2;
  double beta2 = 1.5;
  int grid_points = 21;
  Measure measure = Measure::d_beta2;
  int replicas = 2;
  std::vector<std::string> observables = {"q[1,2]"};
  Scheme scheme = Scheme::mc(500, 1);
  std::vector<CheckKind> checks;
  std::string out_dir = "out";
  int workers = 0;  // 0 = hardware default
};

// Flat sectioned key = value text; `subset = sites : variance` may repeat
// inside [family]. Throws ConfigError with a line reference on bad input.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Semantic checks beyond the grammar (replica indices vs R, mc seed/sample
// requirements, preset parameter ranges). Throws ConfigError.
void validate_config(const RunConfig& config);

InteractionFamily build_family(const FamilySpec& spec);

}  // namespace gg
