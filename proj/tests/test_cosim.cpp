#include <doctest.h>

#include <cmath>
#include <sstream>

#include "check_errc.hpp"
#include "fixtures.hpp"
#include "iiot/cosim.hpp"

using namespace iiot;
using fixtures::d;

namespace {

Scenario noiseless(Scenario sc, double success) {
  for (auto& p : sc.wcs.plants) p.noise_cov = SymMatrix(DenseMatrix(p.dim(), p.dim()));
  sc.channel.direct = load_direct_success({std::vector<double>(9, success), std::vector<double>(9, success)});
  return sc;
}

SimConfig config(std::size_t trials, std::size_t horizon, std::uint64_t seed = 1, unsigned threads = 1) {
  SimConfig c;
  c.trials = trials;
  c.horizon = horizon;
  c.seed = seed;
  c.threads = threads;
  return c;
}

// δ1 = (0,0) is a fixed point under u = δ1; allow that input so the agents can park there.
Scenario parked_at_first_state() {
  Scenario sc = fixtures::bundled_scenario();
  sc.constraints.inputs[d(1)].insert(d(1));
  sc.initial_state = d(1);
  return sc;
}

}  // namespace

TEST_CASE("certain delivery without noise follows the closed loop") {
  const Scenario sc = noiseless(fixtures::bundled_scenario(), 1.0);
  const auto tr = simulate(sc, fixtures::optimal_schedule(), config(3, 30));
  const auto& ac = sc.wcs.plants[0].closed_loop;
  std::vector<double> x{1.0, 1.0};
  for (std::size_t l = 0; l <= 30; ++l) {
    for (std::size_t t = 0; t < 3; ++t) {
      CHECK(tr.state(0, t, l)[0] == doctest::Approx(x[0]).epsilon(1e-12));
      CHECK(tr.state(0, t, l)[1] == doctest::Approx(x[1]).epsilon(1e-12));
      CHECK(tr.state(1, t, l)[0] == doctest::Approx(std::pow(0.2, double(l))).epsilon(1e-12));
    }
    x = ac * std::span<const double>(x);
  }

  const auto rep = empirical_lyapunov_check(simulate(sc, fixtures::optimal_schedule(), config(100, 30)), sc.wcs);
  CHECK(rep.pass());
  for (const auto& p : rep.plants) CHECK(p.worst_margin >= 0.0);
}

TEST_CASE("no delivery without noise holds the second loop still") {
  const Scenario sc = noiseless(fixtures::bundled_scenario(), 0.0);
  SimConfig c = config(2, 50);
  c.initial_states = {{1.0, 1.0}, {3.5}};
  const auto tr = simulate(sc, fixtures::optimal_schedule(), c);
  for (std::size_t l = 0; l <= 50; ++l) CHECK(tr.state(1, 1, l)[0] == 3.5);
}

TEST_CASE("simulation is reproducible and thread-count independent") {
  const Scenario sc = fixtures::bundled_scenario();
  const auto a = simulate(sc, fixtures::optimal_schedule(), config(64, 120, 7, 1));
  const auto b = simulate(sc, fixtures::optimal_schedule(), config(64, 120, 7, 4));
  CHECK(a.states == b.states);
  CHECK(a.delivered == b.delivered);
  const auto c = simulate(sc, fixtures::optimal_schedule(), config(64, 120, 8, 1));
  CHECK(a.states != c.states);

  std::ostringstream sa, sb;
  write_trace_csv(a, sc.wcs, sa);
  write_trace_csv(b, sc.wcs, sb);
  CHECK(sa.str() == sb.str());
}

TEST_CASE("agents move once per tau fast steps") {
  Scenario sc = fixtures::bundled_scenario();
  const auto tr = simulate(sc, fixtures::optimal_schedule(), config(1, 400));
  const std::vector<std::size_t> ring{d(4), d(2), d(5), d(6)};
  for (std::size_t l = 0; l < 400; ++l) CHECK(tr.alpha_at(l) == ring[(l / 40) % 4]);

  sc.cost.tau = 7;
  const auto fast = simulate(sc, fixtures::optimal_schedule(), config(1, 70));
  for (std::size_t k = 0; k < 10; ++k) CHECK(fast.mas_path[k] == tr.mas_path[k]);
}

TEST_CASE("empirical delivery frequencies match the success table") {
  const Scenario sc = fixtures::bundled_scenario();
  const auto tr = simulate(sc, fixtures::optimal_schedule(), config(1000, 160, 3, 0));
  const auto counts = delivery_counts(tr, 9);
  const auto lam = sc.channel.success();
  int checked = 0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t a = 0; a < 9; ++a) {
      const auto& c = counts[i][a];
      if (c.attempts == 0) continue;
      const double p = lam.at(i, a);
      const double freq = static_cast<double>(c.successes) / static_cast<double>(c.attempts);
      CHECK(std::abs(freq - p) <= 3.0 * std::sqrt(p * (1 - p) / static_cast<double>(c.attempts)));
      ++checked;
    }
  CHECK(checked == 8);
  CHECK(counts[0][d(2)].attempts == 40000);
}

TEST_CASE("empirical Lyapunov check") {
  const Scenario sc = fixtures::bundled_scenario();
  const auto small = simulate(sc, fixtures::optimal_schedule(), config(99, 10));
  CHECK_ERRC(empirical_lyapunov_check(small, sc.wcs), Errc::InsufficientTrials);

  // Parked where the first link succeeds with probability 0.05 < 0.29.
  const Scenario parked = parked_at_first_state();
  const auto tr = simulate(parked, {d(1), {}, {d(1)}}, config(1000, 120, 5, 0));
  const auto rep = empirical_lyapunov_check(tr, parked.wcs);
  CHECK_FALSE(rep.plants[0].pass);
  CHECK(rep.plants[0].worst_margin < 0.0);
  CHECK(rep.plants[1].pass);
}

TEST_CASE("average cost trace") {
  Scenario zero = fixtures::bundled_scenario();
  zero.channel.tables.reset();
  std::fill(zero.cost.g.begin(), zero.cost.g.end(), 0.0);
  for (double v : average_cost_trace(zero, fixtures::optimal_schedule(), 200)) CHECK(v == 0.0);

  const Scenario sc = fixtures::bundled_scenario();
  const std::size_t horizon = 10000 * 40;
  const auto opt = average_cost_trace(sc, fixtures::optimal_schedule(), horizon);
  CHECK(std::abs(opt.back() - 0.6) <= 0.006);
  const auto c1 = average_cost_trace(sc, fixtures::c1_schedule(), horizon);
  CHECK(std::abs(c1.back() - 0.675) <= 0.00675);
  CHECK(opt.back() < c1.back());
}

TEST_CASE("average cost equals the mean joint stage cost per fast step") {
  const Scenario sc = fixtures::bundled_scenario();
  for (const Schedule& s : {fixtures::optimal_schedule(), fixtures::c1_schedule()}) {
    const std::size_t slow = 250;
    const auto trace = average_cost_trace(sc, s, slow * sc.cost.tau);
    const auto path = replay(sc.structure, sc.constraints, s, slow);
    double total = 0.0;
    for (std::size_t k = 0; k < slow; ++k)
      total += joint_stage_cost(sc.channel, sc.powers(), sc.cost, path[k], s.input_at(k));
    CHECK(std::abs(trace.back() - total / static_cast<double>(slow * sc.cost.tau)) <= 1e-9);
  }
}

TEST_CASE("trace csv layout") {
  const Scenario sc = fixtures::bundled_scenario();
  const auto tr = simulate(sc, fixtures::optimal_schedule(), config(10, 5));
  std::ostringstream out;
  write_trace_csv(tr, sc.wcs, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "l,k,alpha,x1_1,x1_2,x2_1,V1,V2,delivered1,delivered2,running_cost");
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 10);
    ++rows;
  }
  CHECK(rows == 5);
}

TEST_CASE("schedule violations surface from the simulator") {
  const Scenario sc = fixtures::bundled_scenario();
  CHECK_ERRC(simulate(sc, {d(4), {}, {d(4)}}, config(1, 100)), Errc::ScheduleViolation);
  CHECK_ERRC(simulate(sc, fixtures::optimal_schedule(), config(0, 100)), Errc::ValidationError);
}
