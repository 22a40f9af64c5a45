#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "fixtures.hpp"

namespace fs = std::filesystem;
using fixtures::read_text;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

/// Runs the CLI with IIOT_OUT_DIR set to `dir`.
Run run_cli(const fs::path& dir, const std::string& args) {
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = "IIOT_OUT_DIR='" + dir.string() + "' '" + IIOT_CLI + "' " + args + " >'" +
                          out.string() + "' 2>'" + err.string() + "'";
  const int raw = std::system(cmd.c_str());
  Run r{WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, read_text(out.string()), read_text(err.string())};
  fs::remove(out);
  fs::remove(err);
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("iiot-cli-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string sh_quote(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_CASE("thresholds and check") {
  TempDir tmp;
  const Run t = run_cli(tmp.path, "thresholds " + sh_quote(fixtures::scenario_path()));
  CHECK(t.status == 0);
  CHECK(t.out.find("s1 = 0.2893") != std::string::npos);
  CHECK(t.out.find("s2 = 0.1041") != std::string::npos);

  const Run c = run_cli(tmp.path, "check " + sh_quote(fixtures::scenario_path()));
  CHECK(c.status == 0);
  CHECK(c.out.find("feasible: true") != std::string::npos);
  CHECK(c.err.find("warning: link 2, state 5") != std::string::npos);
}

TEST_CASE("synthesize then simulate") {
  TempDir tmp;
  const Run s = run_cli(tmp.path, "synthesize " + sh_quote(fixtures::scenario_path()));
  REQUIRE(s.status == 0);
  CHECK(s.out.find("cycle: 4 2 5 6") != std::string::npos);
  CHECK(s.out.find("J* = 0.6") != std::string::npos);
  CHECK(fs::exists(tmp.path / "report.yaml"));
  CHECK(fs::exists(tmp.path / "graph.dot"));
  CHECK(read_text((tmp.path / "schedule.yaml").string()).find("cycle: [7, 7, 4, 7]") != std::string::npos);
  CHECK(read_text((tmp.path / "report.yaml").string()).find("optimal_cost: 0.6") != std::string::npos);
  CHECK(read_text((tmp.path / "graph.dot").string()).find("color=red") != std::string::npos);

  const std::string sim = "simulate " + sh_quote(fixtures::scenario_path()) + " --schedule " +
                          sh_quote(tmp.path / "schedule.yaml") + " --seed 11 --trials 120 --horizon 80";
  const Run a = run_cli(tmp.path, sim + " --threads 1");
  REQUIRE(a.status == 0);
  const std::string first = read_text((tmp.path / "trace.csv").string());
  CHECK(a.out.find("lyapunov plant 1:") != std::string::npos);
  const Run b = run_cli(tmp.path, sim + " --threads 3");
  REQUIRE(b.status == 0);
  CHECK(read_text((tmp.path / "trace.csv").string()) == first);
  CHECK(a.out == b.out);
}

TEST_CASE("exact thresholds change the answer") {
  TempDir tmp;
  const Run s = run_cli(tmp.path, "synthesize --exact-thresholds " + sh_quote(fixtures::scenario_path()));
  REQUIRE(s.status == 0);
  CHECK(s.out.find("cycle: 4 2 6") != std::string::npos);
  CHECK(s.out.find("J* = 0.65") != std::string::npos);
}

TEST_CASE("infeasible scenarios exit with 2") {
  TempDir tmp;
  const Run c = run_cli(tmp.path, "check --s-override 0.9,0.9 " + sh_quote(fixtures::scenario_path()));
  CHECK(c.status == 2);
  CHECK(c.out.find("feasible: false") != std::string::npos);
  const Run s = run_cli(tmp.path, "synthesize --s-override 0.9,0.9 " + sh_quote(fixtures::scenario_path()));
  CHECK(s.status == 2);
  CHECK(s.out.find("infeasible") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp.path / "report.yaml"));
}

TEST_CASE("invalid input exits with 1 and writes nothing") {
  TempDir tmp;
  const fs::path bad = tmp.path / "bad.yaml";
  std::ofstream(bad) << fixtures::replace_once(read_text(fixtures::scenario_path()), "[0.0, 0.2, 0.1, 0.7]",
                                               "[0.0, 0.2, 0.1, 0.6]");
  const Run r = run_cli(tmp.path, "synthesize " + sh_quote(bad));
  CHECK(r.status == 1);
  CHECK(r.err.find("bad.yaml:") != std::string::npos);
  CHECK(r.err.find("sums to 0.9") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp.path / "report.yaml"));
  CHECK_FALSE(fs::exists(tmp.path / "schedule.yaml"));

  CHECK(run_cli(tmp.path, "check --s-override 0.5 " + sh_quote(fixtures::scenario_path())).status == 1);
  CHECK(run_cli(tmp.path, "simulate " + sh_quote(fixtures::scenario_path()) + " --schedule " + sh_quote(bad)).status == 1);
  CHECK(run_cli(tmp.path, "frobnicate").status != 0);
}
