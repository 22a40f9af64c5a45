// iiot: analyse a coupled wireless-control / mobile-agent scenario, synthesize
// an optimal periodic agent schedule and verify it by Monte-Carlo simulation.
//
// Artifacts go to $IIOT_OUT_DIR (default: current directory).
// Exit codes: 0 success, 1 error, 2 infeasible.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "iiot/cosim.hpp"
#include "iiot/errors.hpp"
#include "iiot/report.hpp"
#include "iiot/scenario_io.hpp"
#include "iiot/synthesis.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

fs::path out_dir() {
  const char* env = std::getenv("IIOT_OUT_DIR");
  fs::path dir = (env && *env) ? fs::path(env) : fs::path(".");
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw iiot::Error(iiot::Errc::ParseError, "cannot write " + path.string());
  return f;
}

iiot::Scenario load(const std::string& file) {
  iiot::Scenario sc = iiot::load_scenario(file);
  for (const auto& w : sc.warnings) std::cerr << "warning: " << w << '\n';
  return sc;
}

// The command line wins over the file; --exact-thresholds drops both.
std::vector<double> thresholds_for(iiot::Scenario& sc, const std::vector<double>& override_values, bool exact) {
  if (exact) sc.threshold_override.reset();
  if (!override_values.empty()) {
    if (override_values.size() != sc.wcs.plants.size())
      throw iiot::Error(iiot::Errc::ValidationError, "--s-override needs one value per plant");
    sc.threshold_override = override_values;
  }
  return iiot::effective_thresholds(sc);
}

int cmd_thresholds(const std::string& file) {
  iiot::Scenario sc = load(file);
  const auto computed = iiot::compute_thresholds(sc.wcs);
  for (std::size_t i = 0; i < computed.size(); ++i) {
    std::printf("s%zu = %.9f", i + 1, computed[i]);
    if (sc.threshold_override) std::printf("  (scenario override %.9g)", (*sc.threshold_override)[i]);
    std::printf("\n");
  }
  return kExitOk;
}

int cmd_check(const std::string& file, const std::vector<double>& s_override, bool exact) {
  iiot::Scenario sc = load(file);
  const auto s = thresholds_for(sc, s_override, exact);
  const auto an = iiot::analyze(sc, s);
  iiot::write_analysis(sc, an, iiot::compute_thresholds(sc.wcs), std::cout);
  return an.verdict.feasible ? kExitOk : kExitInfeasible;
}

int cmd_synthesize(const std::string& file, const std::vector<double>& s_override, bool exact,
                   const std::string& dot_name) {
  iiot::Scenario sc = load(file);
  const auto s = thresholds_for(sc, s_override, exact);
  iiot::SynthesisResult res = [&] {
    try {
      return iiot::synthesize(sc, s);
    } catch (const iiot::Error& e) {
      if (e.code() == iiot::Errc::Infeasible || e.code() == iiot::Errc::NoCycle) {
        std::cout << "infeasible: " << e.what() << '\n';
        std::exit(kExitInfeasible);
      }
      throw;
    }
  }();

  const fs::path dir = out_dir();
  {
    auto f = open_out(dir / "report.yaml");
    iiot::write_report(sc, res, iiot::compute_thresholds(sc.wcs), f);
  }
  {
    auto f = open_out(dir / "schedule.yaml");
    iiot::write_schedule(res.schedule, f);
  }
  const fs::path dot = dot_name.empty() ? dir / "graph.dot" : dir / dot_name;
  {
    auto f = open_out(dot);
    iiot::write_dot(res, f);
  }

  std::cout << "cycle:";
  for (std::size_t a : res.cycle) std::cout << ' ' << a + 1;
  std::printf("\nmean weight = %.12g\nJ* = %.12g\n", res.mean_weight, res.optimal_cost);
  std::cout << "wrote " << (dir / "report.yaml").string() << ", " << (dir / "schedule.yaml").string() << ", "
            << dot.string() << '\n';
  return kExitOk;
}

int cmd_simulate(const std::string& file, const std::string& schedule_file, const iiot::SimConfig& cfg) {
  iiot::Scenario sc = load(file);
  const iiot::Schedule schedule = iiot::load_schedule(schedule_file);
  if (schedule.initial_state != sc.initial_state)
    throw iiot::Error(iiot::Errc::ValidationError, "schedule starts from state " +
                                                       std::to_string(schedule.initial_state + 1) +
                                                       " but the scenario starts from " +
                                                       std::to_string(sc.initial_state + 1));
  const iiot::SimTrace trace = iiot::simulate(sc, schedule, cfg);

  const fs::path path = out_dir() / "trace.csv";
  {
    auto f = open_out(path);
    iiot::write_trace_csv(trace, sc.wcs, f);
  }
  std::cout << "wrote " << path.string() << '\n';
  std::printf("average cost after %zu steps = %.9g\n", trace.horizon,
              trace.running_cost.empty() ? 0.0 : trace.running_cost.back());

  if (cfg.trials < 100) {
    std::cout << "lyapunov check: skipped (needs at least 100 trials)\n";
    return kExitOk;
  }
  const auto rep = iiot::empirical_lyapunov_check(trace, sc.wcs);
  for (std::size_t i = 0; i < rep.plants.size(); ++i) {
    const auto& p = rep.plants[i];
    std::printf("lyapunov plant %zu: %s (worst margin %.6g at l=%zu, %zu steps)\n", i + 1, p.pass ? "PASS" : "FAIL",
                p.worst_margin, p.worst_step, p.steps_checked);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal agent scheduling for wireless control loops over a state-dependent fading channel"};
  app.require_subcommand(1);

  std::string file;
  std::vector<double> s_override;
  bool exact = false;

  auto* thresholds = app.add_subcommand("thresholds", "Print the per-loop delivery thresholds");
  thresholds->add_option("file", file, "Scenario file")->required()->check(CLI::ExistingFile);

  auto add_threshold_flags = [&](CLI::App* cmd) {
    cmd->add_option("--s-override", s_override, "Thresholds to use, one per plant (comma separated)")
        ->delimiter(',');
    cmd->add_flag("--exact-thresholds", exact, "Ignore thresholds stored in the scenario");
  };

  auto* check = app.add_subcommand("check", "Print the performance region, invariant set and reachability");
  check->add_option("file", file, "Scenario file")->required()->check(CLI::ExistingFile);
  add_threshold_flags(check);

  std::string dot_name;
  auto* synth = app.add_subcommand("synthesize", "Write report.yaml, schedule.yaml and the transition graph");
  synth->add_option("file", file, "Scenario file")->required()->check(CLI::ExistingFile);
  synth->add_option("--dot", dot_name, "DOT file name inside the output directory (default graph.dot)");
  add_threshold_flags(synth);

  std::string schedule_file;
  iiot::SimConfig cfg;
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo co-simulation under a schedule; writes trace.csv");
  sim->add_option("file", file, "Scenario file")->required()->check(CLI::ExistingFile);
  sim->add_option("--schedule", schedule_file, "Schedule file from synthesize")->required()->check(CLI::ExistingFile);
  sim->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  sim->add_option("--trials", cfg.trials, "Number of trials")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--horizon", cfg.horizon, "Fast steps per trial")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*thresholds) return cmd_thresholds(file);
    if (*check) return cmd_check(file, s_override, exact);
    if (*synth) return cmd_synthesize(file, s_override, exact, dot_name);
    if (*sim) return cmd_simulate(file, schedule_file, cfg);
  } catch (const iiot::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
