#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "check_errc.hpp"
#include "fixtures.hpp"
#include "iiot/synthesis.hpp"
#include "random_models.hpp"

using namespace iiot;
using fixtures::d;

namespace {

const std::vector<double> kRoundedS{0.29, 0.10};

double gbar(const Scenario& sc, std::size_t a, std::size_t u) {
  return joint_stage_cost(sc.channel, sc.powers(), sc.cost, a, u);
}

// Smallest mean of any closed walk of length ≤ max_len inside `phi`, searched
// over raw (state, input) pairs without using the transition graph.
double brute_best_periodic_mean(const Scenario& sc, const IndexSet& phi, std::size_t max_len) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, std::size_t, double)> walk = [&](std::size_t start, std::size_t a,
                                                                                 std::size_t len, double w) {
    sc.constraints.inputs[a].for_each([&](std::size_t u) {
      const std::size_t b = sc.structure.next(u, a);
      if (!phi.contains(b)) return;
      const double nw = w + gbar(sc, a, u);
      if (b == start) best = std::min(best, nw / static_cast<double>(len + 1));
      if (len + 1 < max_len) walk(start, b, len + 1, nw);
    });
  };
  phi.for_each([&](std::size_t s) { walk(s, s, 0, 0.0); });
  return best;
}

Scenario tiny_scenario(const std::vector<double>& success) {
  // One agent on D_3 with α' = α + u, every input allowed.
  MasModel mas(1, 3, {{{0, 1}}});
  auto f = build_structure_matrix(mas);
  Plant p{DenseMatrix(1, 1, {0.2}), DenseMatrix(1, 1, {1.0}), SymMatrix::identity(1), 0.9, SymMatrix::identity(1), 1.0};
  ChannelModel ch;
  ch.policy = {2, {{1, 0}}};
  ch.direct = load_direct_success({success});
  return Scenario{WcsModel{{p}}, mas, f, ConstraintSets::uniform(IndexSet::full(3), IndexSet::full(3)), ch,
                  StageCost::input_indexed(10, 1.0, {1, 2, 3}), 0, std::nullopt, {}};
}

}  // namespace

TEST_CASE("joint stage cost") {
  const Scenario sc = fixtures::bundled_scenario();
  CHECK(gbar(sc, d(2), d(7)) == 23.0);
  CHECK(gbar(sc, d(5), d(4)) == 26.0);
  CHECK(gbar(sc, d(6), d(7)) == 24.0);
  CHECK_ERRC(gbar(sc, 9, 0), Errc::IndexOutOfRange);

  Scenario zero = sc;
  std::fill(zero.cost.g.begin(), zero.cost.g.end(), 0.0);
  zero.cost.lambda = 1e-12;
  CHECK(gbar(zero, d(2), d(1)) == doctest::Approx(40 * 0.325));
}

TEST_CASE("thresholds: computed versus override") {
  Scenario sc = fixtures::bundled_scenario();
  const auto s = compute_thresholds(sc.wcs);
  CHECK(s[0] == doctest::Approx(0.2893770857).epsilon(1e-8));
  CHECK(s[1] == doctest::Approx(0.1041666667).epsilon(1e-8));
  CHECK(effective_thresholds(sc) == kRoundedS);
  sc.threshold_override.reset();
  CHECK(effective_thresholds(sc) == s);
}

TEST_CASE("optimal schedule for the example") {
  const Scenario sc = fixtures::bundled_scenario();
  const auto r = synthesize(sc, kRoundedS);
  CHECK(r.analysis.verdict.feasible);
  CHECK(r.graph.edges.size() == 9);
  CHECK(r.prefix.empty());
  CHECK(r.cycle == std::vector<std::size_t>{d(4), d(2), d(5), d(6), d(4)});
  CHECK(r.cycle_weight == 96.0);
  CHECK(r.cycle_length == 4);
  CHECK(r.mean_weight == 24.0);
  CHECK(r.optimal_cost == 0.6);
  CHECK(r.schedule.prefix_inputs.empty());
  CHECK(r.schedule.cycle_inputs == std::vector<std::size_t>{d(7), d(7), d(4), d(7)});
  for (std::size_t k = 0; k < 40; ++k) CHECK(r.schedule.input_at(k) == (k % 4 == 2 ? d(4) : d(7)));

  const auto path = replay(sc.structure, sc.constraints, r.schedule, 12);
  const std::vector<std::size_t> ring{d(4), d(2), d(5), d(6)};
  for (std::size_t k = 0; k <= 12; ++k) CHECK(path[k] == ring[k % 4]);
}

TEST_CASE("exact thresholds drop the fifth state and change the optimum") {
  Scenario sc = fixtures::bundled_scenario();
  sc.threshold_override.reset();
  const auto r = synthesize(sc, effective_thresholds(sc));
  CHECK(r.analysis.region.omega == IndexSet(9, {d(2), d(4), d(6)}));
  CHECK(r.analysis.invariant == IndexSet(9, {d(2), d(4), d(6)}));
  // 23 + 31 + 24 over three steps beats the self-loop at δ2 (27).
  CHECK(r.prefix.empty());
  CHECK(r.cycle == std::vector<std::size_t>{d(4), d(2), d(6), d(4)});
  CHECK(r.mean_weight == 26.0);
  CHECK(r.optimal_cost == 26.0 / 40.0);
  CHECK(r.schedule.cycle_inputs == std::vector<std::size_t>{d(7), d(8), d(7)});
}

TEST_CASE("singleton invariant set pins the state") {
  const Scenario sc = tiny_scenario({0.5, 0.05, 0.05});
  const auto r = synthesize(sc, std::vector<double>{0.2});
  CHECK(r.analysis.invariant == IndexSet(3, {0}));
  CHECK(r.prefix.empty());
  CHECK(r.cycle == std::vector<std::size_t>{0, 0});
  CHECK(r.schedule.cycle_inputs == std::vector<std::size_t>{0});
  CHECK(r.optimal_cost == doctest::Approx(0.1));
}

TEST_CASE("infeasible and malformed schedules") {
  const Scenario sc = fixtures::bundled_scenario();
  const std::vector<double> high{0.9, 0.9};
  CHECK_ERRC(synthesize(sc, high), Errc::Infeasible);

  const Schedule leaves{d(4), {}, {d(4)}};  // δ4 → δ8 ∉ C_α
  CHECK_ERRC(replay(sc.structure, sc.constraints, leaves, 3), Errc::ScheduleViolation);
  const Schedule bad_input{d(4), {d(1)}, {d(7)}};
  CHECK_ERRC(replay(sc.structure, sc.constraints, bad_input, 3), Errc::ScheduleViolation);
  const Schedule bad_start{d(9), {}, {d(7)}};
  CHECK_ERRC(replay(sc.structure, sc.constraints, bad_start, 3), Errc::ScheduleViolation);
  const Schedule no_cycle{d(4), {d(7)}, {}};
  CHECK_ERRC(no_cycle.input_at(5), Errc::ScheduleViolation);
}

TEST_CASE("random scenarios: trajectory validity, cost convergence and optimality") {
  std::mt19937_64 g(606);
  int synthesized = 0, infeasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Scenario sc = fixtures::random_scenario(g);
    const auto s = effective_thresholds(sc);
    SynthesisResult r;
    try {
      r = synthesize(sc, s);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::Infeasible);
      CHECK_FALSE(analyze(sc, s).verdict.feasible);
      ++infeasible;
      continue;
    }
    ++synthesized;
    const IndexSet& phi = r.analysis.verdict.witness;
    const std::size_t lead = r.schedule.prefix_inputs.size();
    CHECK(r.prefix.size() == lead);
    if (!r.prefix.empty()) CHECK(r.prefix.front() == sc.initial_state);
    CHECK(r.cycle.front() == r.cycle.back());
    CHECK(r.optimal_cost == r.mean_weight / static_cast<double>(sc.cost.tau));

    const std::size_t horizon = 10000;
    const auto path = replay(sc.structure, sc.constraints, r.schedule, horizon);
    for (std::size_t k = lead; k <= horizon; ++k) CHECK(phi.contains(path[k]));

    double total = 0.0, gmax = 0.0;
    for (std::size_t k = 0; k < horizon; ++k) {
      const double c = gbar(sc, path[k], r.schedule.input_at(k));
      total += c;
      gmax = std::max(gmax, c);
    }
    const double bound = gmax * static_cast<double>(lead + r.cycle_length) / horizon;
    CHECK(std::abs(total / horizon - r.mean_weight) <= bound + 1e-9);

    const double best = brute_best_periodic_mean(sc, phi, phi.size());
    CHECK(r.mean_weight <= best + 1e-9);
    CHECK(r.mean_weight >= best - 1e-9);
  }
  CHECK(synthesized > 50);
  CHECK(infeasible > 10);
}
