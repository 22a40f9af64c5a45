#pragma once

// From thresholds to an optimal periodic input schedule for the agents.

#include <span>
#include <vector>

#include "iiot/graph.hpp"
#include "iiot/scenario.hpp"
#include "iiot/stabilization.hpp"

namespace iiot {

/// τ·Σ_i μ_i P{transmit_i | a} + λ·g(a,u).
double joint_stage_cost(const ChannelModel& channel, std::span<const double> powers, const StageCost& cost,
                        std::size_t state, std::size_t input);

/// Per-link decay thresholds of the control loops.
std::vector<double> compute_thresholds(const WcsModel& wcs);

/// The override when present, otherwise the computed thresholds.
std::vector<double> effective_thresholds(const Scenario& scenario);

struct Analysis {
  std::vector<double> thresholds;
  PerformanceRegion region;
  IndexSet invariant;
  ReachabilityLayers reach;
  Feasibility verdict;
};

Analysis analyze(const Scenario& scenario, std::span<const double> thresholds);

/// Input u(k) = prefix[k] for k < |prefix|, then the cycle inputs repeat.
struct Schedule {
  std::size_t initial_state = 0;
  std::vector<std::size_t> prefix_inputs;
  std::vector<std::size_t> cycle_inputs;

  std::size_t input_at(std::size_t k) const;
};

/// States α(0..steps) obtained by applying the schedule; throws
/// ScheduleViolation when a state leaves C_α or an input leaves C_u(α).
std::vector<std::size_t> replay(const StructureMatrix& f, const ConstraintSets& constraints, const Schedule& schedule,
                                std::size_t steps);

struct SynthesisResult {
  Analysis analysis;
  TransitionGraph graph;                 // G[Φ]
  std::vector<std::size_t> prefix;       // states visited before the cycle entry
  std::vector<std::size_t> cycle;        // closed, starts at the entry state
  Schedule schedule;
  double cycle_weight = 0.0;
  std::size_t cycle_length = 0;
  double mean_weight = 0.0;              // w̄(C*)
  double optimal_cost = 0.0;             // J* = w̄(C*)/τ
};

/// Throws Infeasible when I(Ω(s)) ∩ R(α₀) = ∅ and NoCycle when G[Φ] is acyclic.
SynthesisResult synthesize(const Scenario& scenario, std::span<const double> thresholds);

}  // namespace iiot
