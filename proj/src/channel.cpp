#include "iiot/channel.hpp"

#include <cmath>
#include <string>

#include "iiot/errors.hpp"

namespace iiot {

namespace {

void check_indices(const ChannelTables& tables, const TransmitPolicy& policy, std::size_t link, std::size_t state) {
  if (link >= tables.links || link >= policy.links())
    throw Error(Errc::IndexOutOfRange, "link " + std::to_string(link) + " out of range");
  if (state >= tables.states) throw Error(Errc::IndexOutOfRange, "state " + std::to_string(state) + " out of range");
}

}  // namespace

void validate_tables(const ChannelTables& tables, const TransmitPolicy& policy) {
  std::string problems;
  auto fail = [&](const std::string& what) { problems += (problems.empty() ? "" : "; ") + what; };

  if (tables.gamma.size() != tables.links * tables.states * tables.local_states ||
      tables.eta.size() != tables.links * tables.states)
    fail("channel table sizes inconsistent");
  if (policy.links() != tables.links) fail("policy has " + std::to_string(policy.links()) + " links, tables have " + std::to_string(tables.links));
  if (policy.local_states != tables.local_states) fail("policy and tables disagree on the number of local states");
  for (const auto& row : policy.table) {
    if (row.size() != policy.local_states) fail("policy row length");
    for (auto h : row)
      if (h > 1) fail("policy entries must be 0 or 1");
  }
  if (!problems.empty()) throw Error(Errc::ValidationError, problems);

  for (std::size_t i = 0; i < tables.links; ++i)
    for (std::size_t a = 0; a < tables.states; ++a) {
      double sum = 0.0;
      for (std::size_t c = 0; c < tables.local_states; ++c) {
        const double g = tables.gamma_at(i, a, c);
        if (!(g >= 0.0 && g <= 1.0)) fail("gamma out of [0,1] at link " + std::to_string(i + 1) + ", state " + std::to_string(a + 1));
        sum += g;
      }
      if (std::abs(sum - 1.0) > 1e-9)
        fail("gamma for link " + std::to_string(i + 1) + ", state " + std::to_string(a + 1) + " sums to " + std::to_string(sum));
      const double e = tables.eta_at(i, a);
      if (!(e >= 0.0 && e <= 1.0)) fail("eta out of [0,1] at link " + std::to_string(i + 1) + ", state " + std::to_string(a + 1));
    }
  if (!problems.empty()) throw Error(Errc::ValidationError, problems);
}

double transmit_prob(const ChannelTables& tables, const TransmitPolicy& policy, std::size_t link, std::size_t state) {
  check_indices(tables, policy, link, state);
  double p = 0.0;
  for (std::size_t c = 0; c < tables.local_states; ++c)
    if (policy.table[link][c]) p += tables.gamma_at(link, state, c);
  return p;
}

double success_prob(const ChannelTables& tables, const TransmitPolicy& policy, std::size_t link, std::size_t state) {
  return tables.eta_at(link, state) * transmit_prob(tables, policy, link, state);
}

double expected_power(const ChannelTables& tables, const TransmitPolicy& policy, std::span<const double> powers,
                      std::size_t state) {
  if (powers.size() != tables.links) throw Error(Errc::DimensionMismatch, "one transmit power per link required");
  double total = 0.0;
  for (std::size_t i = 0; i < tables.links; ++i) total += powers[i] * transmit_prob(tables, policy, i, state);
  return total;
}

SuccessTable derive_success_table(const ChannelTables& tables, const TransmitPolicy& policy) {
  SuccessTable out{tables.links, tables.states, std::vector<double>(tables.links * tables.states)};
  for (std::size_t i = 0; i < tables.links; ++i)
    for (std::size_t a = 0; a < tables.states; ++a) out.lambda[i * tables.states + a] = success_prob(tables, policy, i, a);
  return out;
}

SuccessTable load_direct_success(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw Error(Errc::DimensionMismatch, "empty success table");
  SuccessTable out{rows.size(), rows.front().size(), {}};
  out.lambda.reserve(out.links * out.states);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != out.states) throw Error(Errc::DimensionMismatch, "ragged success table");
    for (std::size_t a = 0; a < rows[i].size(); ++a) {
      const double v = rows[i][a];
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(Errc::ValueOutOfRange, "success probability " + std::to_string(v) + " at link " +
                                               std::to_string(i + 1) + ", state " + std::to_string(a + 1));
      }
      out.lambda.push_back(v);
    }
  }
  return out;
}

SuccessTable ChannelModel::success() const {
  if (direct) return *direct;
  if (tables) return derive_success_table(*tables, policy);
  throw Error(Errc::ValidationError, "channel has neither local-channel tables nor a direct success table");
}

double ChannelModel::expected_power(std::span<const double> powers, std::size_t state) const {
  if (!tables) return 0.0;
  return iiot::expected_power(*tables, policy, powers, state);
}

std::vector<ChannelMismatch> consistency_mismatches(const ChannelModel& channel, double tol) {
  std::vector<ChannelMismatch> out;
  if (!channel.tables || !channel.direct) return out;
  const SuccessTable derived = derive_success_table(*channel.tables, channel.policy);
  for (std::size_t i = 0; i < derived.links; ++i)
    for (std::size_t a = 0; a < derived.states; ++a) {
      const double d = derived.at(i, a);
      const double m = channel.direct->at(i, a);
      if (std::abs(d - m) > tol) out.push_back({i, a, d, m});
    }
  return out;
}

}  // namespace iiot
