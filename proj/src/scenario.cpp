#include "iiot/scenario.hpp"

#include "iiot/errors.hpp"

namespace iiot {

StageCost StageCost::input_indexed(std::size_t tau, double lambda, const std::vector<double>& values) {
  StageCost c{tau, lambda, values.size(), std::vector<double>(values.size() * values.size())};
  for (std::size_t a = 0; a < values.size(); ++a)
    for (std::size_t u = 0; u < values.size(); ++u) c.g[a * values.size() + u] = values[u];
  return c;
}

std::vector<double> Scenario::powers() const {
  std::vector<double> out;
  out.reserve(wcs.plants.size());
  for (const auto& p : wcs.plants) out.push_back(p.power);
  return out;
}

void validate_scenario(const Scenario& s) {
  std::string problems;
  auto fail = [&](const std::string& what) { problems += (problems.empty() ? "" : "; ") + what; };
  const std::size_t n = s.states();
  const std::size_t q = s.wcs.plants.size();

  if (q == 0) fail("at least one plant required");
  for (std::size_t i = 0; i < q; ++i) {
    try {
      validate_plant(s.wcs.plants[i]);
    } catch (const Error& e) {
      fail("plant " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  if (s.structure.states() != n) fail("structure matrix does not match the agent model");
  if (s.constraints.universe() != n || s.constraints.inputs.size() != n)
    fail("constraint sets must range over N = " + std::to_string(n) + " states");
  else {
    if (s.constraints.states.empty()) fail("C_alpha is empty");
    for (const auto& u : s.constraints.inputs)
      if (u.universe() != n) fail("admissible input sets must range over N inputs");
    if (s.initial_state >= n || !s.constraints.states.contains(s.initial_state))
      fail("initial state " + std::to_string(s.initial_state + 1) + " is not in C_alpha");
  }

  if (s.channel.policy.links() != q) fail("transmit policy must have one row per plant");
  if (s.channel.tables) {
    if (s.channel.tables->links != q || s.channel.tables->states != n) fail("channel tables must be q x N");
    else {
      try {
        validate_tables(*s.channel.tables, s.channel.policy);
      } catch (const Error& e) {
        fail(e.what());
      }
    }
  }
  if (s.channel.direct && (s.channel.direct->links != q || s.channel.direct->states != n))
    fail("direct success table must be q x N");
  if (!s.channel.tables && !s.channel.direct) fail("channel needs local-channel tables or a direct success table");

  if (s.cost.tau < 1) fail("tau must be at least 1");
  if (!(s.cost.lambda > 0.0)) fail("lambda must be positive");
  if (s.cost.states != n || s.cost.g.size() != n * n) fail("stage cost table must be N x N");
  for (double g : s.cost.g)
    if (!(g >= 0.0)) {
      fail("stage costs must be nonnegative");
      break;
    }

  if (s.threshold_override) {
    if (s.threshold_override->size() != q) fail("threshold override needs one entry per plant");
    for (double v : *s.threshold_override)
      if (!(v >= 0.0 && v <= 1.0)) fail("threshold override entries must lie in [0,1]");
  }
  if (!problems.empty()) throw Error(Errc::ValidationError, problems);
}

}  // namespace iiot
