#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gg/runner.hpp"

using namespace gg;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir(const char* name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string write_config(const fs::path& dir, const std::string& body) {
  auto p = dir / "run.cfg";
  std::ofstream(p) << body;
  return p.string();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// results.csv with the trailing wall-time column removed from each line
std::string strip_wall(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    auto pos = line.rfind(',');
    out << line.substr(0, pos) << '\n';
  }
  return out.str();
}

int count_rows_with(const std::string& csv, const std::string& needle) {
  std::istringstream in(csv);
  std::string line;
  int n = 0;
  while (std::getline(in, line))
    if (line.find(needle) != std::string::npos) ++n;
  return n;
}

const char* kClassicalConfig = R"(
[family]
preset = sk
n = 4
[grid]
beta1 = 0.2
beta2 = 1.5
points = 21
[observable]
g = q[1,2]
replicas = 2
[scheme]
method = mc
samples = 200
seed = 7
[checks]
run = classical
)";

}  // namespace

TEST_CASE("classical run emits the contracted row counts") {
  TempDir tmp("ggbench_test_rows");
  auto cfg_path = write_config(tmp.path, std::string(kClassicalConfig) + "[output]\ndir = " +
                                             (tmp.path / "out").string() + "\n");
  CHECK(run(cfg_path, "", 0) == 0);
  auto csv = read_file(tmp.path / "out" / "results.csv");
  CHECK(count_rows_with(csv, ",classical,r1,") == 21);
  CHECK(count_rows_with(csv, ",classical,r2,") == 21);
  CHECK(count_rows_with(csv, ",classical,r1_integral,") == 1);
  CHECK(count_rows_with(csv, ",classical,r2_integral,") == 1);
  CHECK(fs::exists(tmp.path / "out" / "summary.json"));
  CHECK(fs::exists(tmp.path / "out" / "classical_r1.curve.csv"));
  CHECK(fs::exists(tmp.path / "out" / "classical_r2.curve.csv"));
}

TEST_CASE("reruns are byte-identical up to wall time, across worker counts") {
  TempDir tmp("ggbench_test_repro");
  auto cfg_path = write_config(tmp.path, kClassicalConfig);
  CHECK(run(cfg_path, (tmp.path / "a").string(), 1) == 0);
  CHECK(run(cfg_path, (tmp.path / "b").string(), 4) == 0);
  CHECK(strip_wall(read_file(tmp.path / "a" / "results.csv")) ==
        strip_wall(read_file(tmp.path / "b" / "results.csv")));
  CHECK(read_file(tmp.path / "a" / "classical_r1.curve.csv") ==
        read_file(tmp.path / "b" / "classical_r1.curve.csv"));
}

TEST_CASE("bad replica index exits 2 naming the index") {
  TempDir tmp("ggbench_test_exit2");
  auto cfg_path = write_config(tmp.path, R"(
[family]
preset = sk
n = 4
[observable]
g = q[1,3]
replicas = 2
[scheme]
method = mc
samples = 100
seed = 1
)");
  CHECK(run(cfg_path, (tmp.path / "out").string(), 0) == 2);
  CHECK(run("/nonexistent/path.cfg", (tmp.path / "out").string(), 0) == 2);
}

TEST_CASE("infeasible quadrature exits 3") {
  TempDir tmp("ggbench_test_exit3");
  auto cfg_path = write_config(tmp.path, R"(
[family]
preset = sk
n = 10
[checks]
run = wick
[scheme]
method = mc
samples = 100
seed = 1
)");
  CHECK(run(cfg_path, (tmp.path / "out").string(), 0) == 3);
}

TEST_CASE("failed hard check exits 1") {
  TempDir tmp("ggbench_test_exit1");
  // per-site variance 5 exceeds the declared cbar of 1
  auto cfg_path = write_config(tmp.path, R"(
[family]
preset = custom
volume = 2
cbar = 1.0
subset = 0,1 : 10.0
[checks]
run = stability
[scheme]
method = mc
samples = 100
seed = 1
)");
  CHECK(run(cfg_path, (tmp.path / "out").string(), 0) == 1);
}

TEST_CASE("sweep writes scaling rows and a slope") {
  TempDir tmp("ggbench_test_sweep");
  auto cfg_path = write_config(tmp.path, R"(
[family]
preset = sk
n = 4
[grid]
beta1 = 0.3
beta2 = 1.2
points = 5
[scheme]
method = mc
samples = 100
seed = 3
[checks]
run = classical
)");
  CHECK(sweep(cfg_path, {4, 6, 8}, (tmp.path / "out").string(), 0) == 0);
  auto csv = read_file(tmp.path / "out" / "scaling.csv");
  CHECK(count_rows_with(csv, ",abs_integral,") == 3);
  CHECK(count_rows_with(csv, ",loglog_slope,") == 1);

  CHECK(sweep(cfg_path, {4}, (tmp.path / "single").string(), 0) == 0);
  auto single = read_file(tmp.path / "single" / "scaling.csv");
  CHECK(count_rows_with(single, "loglog_slope,na,na,na") == 1);

  CHECK(sweep(cfg_path, {40}, (tmp.path / "big").string(), 0) == 3);
}

TEST_CASE("real formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 12345.678901234567, 1e-300}) {
    CHECK(std::stod(format_real(v)) == v);
  }
}
