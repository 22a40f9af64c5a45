#pragma once

// State-dependent fading channel: the probability that link i delivers a
// packet while the agents occupy logical state α.
//
// Link and state arguments are 0-based (state a is δ_N^{a+1}).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace iiot {

/// h_i(c) ∈ {0,1}: whether sensor i transmits when its local channel is in state c.
struct TransmitPolicy {
  std::size_t local_states = 0;
  std::vector<std::vector<std::uint8_t>> table;  // [link][c]

  std::size_t links() const noexcept { return table.size(); }
};

struct ChannelTables {
  std::size_t links = 0;
  std::size_t states = 0;
  std::size_t local_states = 0;
  std::vector<double> gamma;  // [link][state][c], probability of local state c
  std::vector<double> eta;    // [link][state], decode probability

  double gamma_at(std::size_t link, std::size_t state, std::size_t c) const {
    return gamma[(link * states + state) * local_states + c];
  }
  double eta_at(std::size_t link, std::size_t state) const { return eta[link * states + state]; }
};

/// Throws ValidationError when a γ̄ row does not sum to one or an entry leaves [0,1].
void validate_tables(const ChannelTables& tables, const TransmitPolicy& policy);

struct SuccessTable {
  std::size_t links = 0;
  std::size_t states = 0;
  std::vector<double> lambda;  // [link][state]

  double at(std::size_t link, std::size_t state) const { return lambda[link * states + state]; }
};

double transmit_prob(const ChannelTables& tables, const TransmitPolicy& policy, std::size_t link, std::size_t state);
double success_prob(const ChannelTables& tables, const TransmitPolicy& policy, std::size_t link, std::size_t state);

/// Σ_i μ_i · transmit_prob(i, state).
double expected_power(const ChannelTables& tables, const TransmitPolicy& policy, std::span<const double> powers,
                      std::size_t state);

SuccessTable derive_success_table(const ChannelTables& tables, const TransmitPolicy& policy);

/// Uses measured λ̄ rows directly, one row per link.
SuccessTable load_direct_success(const std::vector<std::vector<double>>& rows);

/// Policy + local-channel statistics, optionally overridden by a measured
/// success table. When both exist the direct table is authoritative.
struct ChannelModel {
  TransmitPolicy policy;
  std::optional<ChannelTables> tables;
  std::optional<SuccessTable> direct;

  SuccessTable success() const;
  /// Zero when no local-channel statistics are available.
  double expected_power(std::span<const double> powers, std::size_t state) const;
};

struct ChannelMismatch {
  std::size_t link;
  std::size_t state;
  double derived;
  double direct;
};

/// Entries where |derived − direct| exceeds `tol`.
std::vector<ChannelMismatch> consistency_mismatches(const ChannelModel& channel, double tol = 0.01);

}  // namespace iiot
