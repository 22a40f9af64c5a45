#include "iiot/synthesis.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "iiot/errors.hpp"

namespace iiot {

double joint_stage_cost(const ChannelModel& channel, std::span<const double> powers, const StageCost& cost,
                        std::size_t state, std::size_t input) {
  if (state >= cost.states || input >= cost.states)
    throw Error(Errc::IndexOutOfRange, "stage cost index outside the state space");
  return static_cast<double>(cost.tau) * channel.expected_power(powers, state) + cost.lambda * cost.at(state, input);
}

std::vector<double> compute_thresholds(const WcsModel& wcs) {
  std::vector<double> s;
  s.reserve(wcs.plants.size());
  for (const auto& p : wcs.plants) s.push_back(decay_threshold(p));
  return s;
}

std::vector<double> effective_thresholds(const Scenario& scenario) {
  if (scenario.threshold_override) return *scenario.threshold_override;
  return compute_thresholds(scenario.wcs);
}

Analysis analyze(const Scenario& scenario, std::span<const double> thresholds) {
  Analysis a{{thresholds.begin(), thresholds.end()},
             omega_set(scenario.channel.success(), thresholds, scenario.constraints),
             {},
             reachable_layers(scenario.structure, scenario.constraints, scenario.initial_state),
             {}};
  a.invariant = largest_invariant(a.region, scenario.structure, scenario.constraints);
  a.verdict = feasibility(a.invariant, a.reach.reach);
  return a;
}

std::size_t Schedule::input_at(std::size_t k) const {
  if (k < prefix_inputs.size()) return prefix_inputs[k];
  if (cycle_inputs.empty()) throw Error(Errc::ScheduleViolation, "schedule has no periodic part");
  return cycle_inputs[(k - prefix_inputs.size()) % cycle_inputs.size()];
}

std::vector<std::size_t> replay(const StructureMatrix& f, const ConstraintSets& constraints, const Schedule& schedule,
                                std::size_t steps) {
  std::vector<std::size_t> path{schedule.initial_state};
  path.reserve(steps + 1);
  for (std::size_t k = 0;; ++k) {
    const std::size_t a = path.back();
    if (a >= constraints.universe() || !constraints.states.contains(a))
      throw Error(Errc::ScheduleViolation, "state " + std::to_string(a + 1) + " at step " + std::to_string(k) +
                                               " leaves C_alpha");
    if (k == steps) break;
    const std::size_t u = schedule.input_at(k);
    if (u >= constraints.universe() || !constraints.inputs[a].contains(u))
      throw Error(Errc::ScheduleViolation, "input " + std::to_string(u + 1) + " at step " + std::to_string(k) +
                                               " is not admissible in state " + std::to_string(a + 1));
    path.push_back(f.next(u, a));
  }
  return path;
}

namespace {

std::size_t cheapest_input(const IndexSet& inputs, const EdgeCost& cost, std::size_t a) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  double best_w = std::numeric_limits<double>::infinity();
  inputs.for_each([&](std::size_t u) {
    const double w = cost(a, u);
    if (w < best_w) {
      best_w = w;
      best = u;
    }
  });
  return best;
}

}  // namespace

SynthesisResult synthesize(const Scenario& scenario, std::span<const double> thresholds) {
  SynthesisResult out{analyze(scenario, thresholds), {}, {}, {}, {}};
  const Analysis& an = out.analysis;
  if (!an.verdict.feasible)
    throw Error(Errc::Infeasible, "I(Omega(s)) does not intersect the reachable set of the initial state");

  const auto powers = scenario.powers();
  const EdgeCost cost = [&](std::size_t a, std::size_t u) {
    return joint_stage_cost(scenario.channel, powers, scenario.cost, a, u);
  };
  const StructureMatrix& f = scenario.structure;
  out.graph = build_graph(f, scenario.constraints, cost, an.verdict.witness);

  MeanCycle best;
  for (const auto& comp : tarjan_scc(out.graph)) {
    if (comp.size() == 1 && !out.graph.find(comp.front(), comp.front())) continue;
    MeanCycle c = karp_min_mean_cycle(out.graph, comp);
    if (best.length == 0 || c.weight * static_cast<double>(best.length) < best.weight * static_cast<double>(c.length))
      best = std::move(c);
  }
  if (best.length == 0) throw Error(Errc::NoCycle, "G[Phi] contains no cycle");

  std::vector<std::size_t> ring(best.vertices.begin(), best.vertices.end() - 1);
  const std::size_t a0 = scenario.initial_state;
  std::size_t entry;
  if (std::find(ring.begin(), ring.end(), a0) != ring.end()) {
    entry = a0;
  } else {
    const IndexSet on_cycle = IndexSet::from(scenario.states(), ring);
    const auto& layers = an.reach.layers;
    std::size_t depth = 0;
    for (std::size_t i = 1; i < layers.size(); ++i)
      if (layers[i].intersects(on_cycle)) {
        depth = i;
        break;
      }
    if (depth == 0) throw Error(Errc::NoCycle, "minimum-mean cycle is not reachable");
    entry = (layers[depth] & on_cycle).to_vector().front();

    std::vector<std::size_t> t(depth + 1);
    t[0] = a0;
    t[depth] = entry;
    for (std::size_t k = depth - 1; k >= 1; --k) {
      const auto candidates = layers[k].to_vector();
      auto it = std::find_if(candidates.begin(), candidates.end(), [&](std::size_t a) {
        return one_step_reach(f, scenario.constraints, a).contains(t[k + 1]);
      });
      t[k] = *it;
    }
    out.prefix.assign(t.begin(), t.end() - 1);
    for (std::size_t k = 0; k < depth; ++k) {
      const IndexSet u = admissible_inputs(f, scenario.constraints, t[k], t[k + 1]);
      out.schedule.prefix_inputs.push_back(cheapest_input(u, cost, t[k]));
    }
  }

  std::rotate(ring.begin(), std::find(ring.begin(), ring.end(), entry), ring.end());
  out.cycle = ring;
  out.cycle.push_back(ring.front());
  for (std::size_t k = 0; k + 1 < out.cycle.size(); ++k)
    out.schedule.cycle_inputs.push_back(out.graph.find(out.cycle[k], out.cycle[k + 1])->optimal_inputs.front());

  out.schedule.initial_state = a0;
  out.cycle_weight = best.weight;
  out.cycle_length = best.length;
  out.mean_weight = best.mean();
  out.optimal_cost = out.mean_weight / static_cast<double>(scenario.cost.tau);
  return out;
}

}  // namespace iiot
