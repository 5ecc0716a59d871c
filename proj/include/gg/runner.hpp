#pragma once

#include <string>
#include <vector>

#include "gg/config.hpp"

namespace gg {

// One results.csv row. wall_s is the only field allowed to differ between
// reruns of the same config.
struct ResultRecord {
  std::string check;
  std::string item;
  std::string family;
  std::string beta;  // single value or "b1:b2" for integrated rows
  double value = 0.0;
  double stderr_ = 0.0;
  double bound = 0.0;
  bool has_bound = false;
  bool pass = true;
  bool hard = false;  // hard failures drive the exit code
  std::uint64_t seed = 0;
  double wall_s = 0.0;
};

struct RunOutcome {
  int exit_code = 0;  // 0 ok, 1 hard-check failure, 2 config, 3 infeasible
  std::vector<ResultRecord> records;
};

// Executes the configured checks and writes results.csv, summary.json and
// per-curve *.curve.csv into out_dir.
RunOutcome run_config(const RunConfig& config);
int run(const std::string& config_path, const std::string& out_override, int workers_override);

// Reruns the leading classical/gg check across system sizes and writes
// scaling.csv with a fitted log-log slope.
int sweep(const std::string& config_path, const std::vector<int>& sizes,
          const std::string& out_override, int workers_override);

std::string format_real(double v);  // shortest round-trip-safe decimal

}  // namespace gg
