#pragma once

// Everything needed to analyse, synthesize and simulate one heterogeneous
// system: the control loops, the agents, their coupling channel and costs.

#include <optional>
#include <string>
#include <vector>

#include "iiot/channel.hpp"
#include "iiot/mas.hpp"
#include "iiot/plant.hpp"

namespace iiot {

/// g(a,u) table over (state, input) pairs, time-scale ratio τ and weight λ.
struct StageCost {
  std::size_t tau = 1;
  double lambda = 1.0;
  std::size_t states = 0;
  std::vector<double> g;  // [state][input]

  double at(std::size_t state, std::size_t input) const { return g[state * states + input]; }
  /// g(a,u) = values[u] for every state a.
  static StageCost input_indexed(std::size_t tau, double lambda, const std::vector<double>& values);
};

struct Scenario {
  WcsModel wcs;
  MasModel mas;
  StructureMatrix structure;
  ConstraintSets constraints;
  ChannelModel channel;
  StageCost cost;
  std::size_t initial_state = 0;  // 0-based
  std::optional<std::vector<double>> threshold_override;
  std::vector<std::string> warnings;

  std::size_t states() const noexcept { return mas.state_count(); }
  std::vector<double> powers() const;
};

/// Cross-checks every component against the others; throws ValidationError
/// listing each violated invariant.
void validate_scenario(const Scenario& scenario);

}  // namespace iiot
