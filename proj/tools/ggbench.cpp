#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gg/acceptance.hpp"
#include "gg/runner.hpp"
#include "gg/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Gaussian subset-interaction spin-glass identity workbench"};
  app.set_version_flag("--version", std::string(gg::kCodeVersion));
  app.require_subcommand(1);

  int workers = 0;
  std::string out_dir;
  app.add_option("--workers", workers, "worker thread count (0 = hardware)");
  app.add_option("--out", out_dir, "output directory override");

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "execute the checks in a config file");
  run_cmd->add_option("config", config_path, "config file path")->required();

  std::vector<int> sizes;
  auto* sweep_cmd = app.add_subcommand("sweep", "repeat a check across system sizes");
  sweep_cmd->add_option("config", config_path, "config file path")->required();
  sweep_cmd->add_option("--sizes", sizes, "system sizes, e.g. --sizes 4,8,12")
      ->required()
      ->delimiter(',');

  std::string suite = "desk";
  std::vector<int> criteria;
  auto* check_cmd = app.add_subcommand("check", "run the built-in verification suite");
  check_cmd->add_option("--suite", suite, "suite name (desk)");
  check_cmd->add_option("--criteria", criteria, "restrict to specific criteria")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) return gg::run(config_path, out_dir, workers);
  if (sweep_cmd->parsed()) return gg::sweep(config_path, sizes, out_dir, workers);

  if (suite != "desk") {
    std::cerr << "unknown suite '" << suite << "'\n";
    return 2;
  }
  if (criteria.empty()) criteria = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  int failures = gg::run_acceptance(criteria, workers, std::cout);
  return failures == 0 ? 0 : 1;
}
