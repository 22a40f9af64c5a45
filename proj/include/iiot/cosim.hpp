#pragma once

// Two-time-scale Monte-Carlo co-simulation: the agents advance once every τ
// wireless slots, and during slot l every link delivers independently with
// probability λ̄_i(α(⌊l/τ⌋)).

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "iiot/scenario.hpp"
#include "iiot/synthesis.hpp"

namespace iiot {

struct SimConfig {
  std::size_t horizon = 200;  // fast steps K
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  /// One initial state per plant; empty means all-ones.
  std::vector<std::vector<double>> initial_states;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct SimTrace {
  std::size_t trials = 0;
  std::size_t horizon = 0;
  std::size_t tau = 1;
  std::size_t entry_step = 0;  // first fast step of the periodic part
  std::vector<std::size_t> plant_dims;
  std::vector<std::size_t> mas_path;  // α(k) for every slow step touched
  /// Per plant, x_i(l) for l = 0..horizon laid out [trial][l][dim].
  std::vector<std::vector<double>> states;
  /// [trial][l][link] for l < horizon.
  std::vector<std::uint8_t> delivered;
  /// Deterministic running average cost after l+1 fast steps.
  std::vector<double> running_cost;

  std::size_t links() const noexcept { return plant_dims.size(); }
  std::size_t alpha_at(std::size_t l) const { return mas_path[l / tau]; }
  const double* state(std::size_t plant, std::size_t trial, std::size_t l) const {
    return states[plant].data() + (trial * (horizon + 1) + l) * plant_dims[plant];
  }
  bool was_delivered(std::size_t trial, std::size_t l, std::size_t link) const {
    return delivered[(trial * horizon + l) * links() + link] != 0;
  }
};

/// Throws ScheduleViolation when the schedule leaves C_α or C_u.
SimTrace simulate(const Scenario& scenario, const Schedule& schedule, const SimConfig& config);

struct PlantCheck {
  bool pass = true;
  double worst_margin = 0.0;  // min over checked steps of 3·SE − mean excess
  std::size_t worst_step = 0;
  std::size_t steps_checked = 0;
};

struct LyapunovReport {
  std::vector<PlantCheck> plants;
  bool pass() const;
};

/// For every fast step l ≥ entry, tests mean_t[V(x(l+1)) − ρV(x(l)) − Tr(QΞ)] ≤ 3·SE
/// across trials. Needs at least 100 trials.
LyapunovReport empirical_lyapunov_check(const SimTrace& trace, const WcsModel& wcs);

struct DeliveryCount {
  std::size_t attempts = 0;
  std::size_t successes = 0;
};

/// [link][state] delivery tallies over all trials and steps.
std::vector<std::vector<DeliveryCount>> delivery_counts(const SimTrace& trace, std::size_t states);

/// Running average of the expected power plus λ·g, one entry per fast step.
std::vector<double> average_cost_trace(const Scenario& scenario, const Schedule& schedule, std::size_t horizon);

/// One row per fast step: l, k, alpha (1-based), across-trial mean of every
/// plant coordinate and of V_i, delivery frequency per link, running cost.
void write_trace_csv(const SimTrace& trace, const WcsModel& wcs, std::ostream& os);

}  // namespace iiot
