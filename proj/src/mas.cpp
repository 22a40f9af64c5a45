#include "iiot/mas.hpp"

#include <string>

#include "iiot/errors.hpp"

namespace iiot {

MasModel::MasModel(std::size_t agents, int kappa, std::vector<std::vector<CouplingTerm>> terms)
    : agents_(agents), kappa_(kappa), states_(0), terms_(std::move(terms)) {
  std::string problems;
  auto fail = [&](const std::string& what) { problems += (problems.empty() ? "" : "; ") + what; };
  if (agents_ == 0) fail("at least one agent required");
  if (kappa_ < 2) fail("kappa must be at least 2");
  if (terms_.size() != agents_) fail("coupling terms must be given for every agent");
  for (std::size_t j = 0; j < terms_.size() && kappa_ >= 2; ++j) {
    std::vector<bool> seen(agents_, false);
    for (const auto& t : terms_[j]) {
      if (t.source >= agents_) {
        fail("agent " + std::to_string(j + 1) + " references unknown agent " + std::to_string(t.source + 1));
        continue;
      }
      if (seen[t.source]) fail("duplicate weight a_{" + std::to_string(j + 1) + "," + std::to_string(t.source + 1) + "}");
      seen[t.source] = true;
      if (t.weight < 0 || t.weight >= kappa_)
        fail("weight a_{" + std::to_string(j + 1) + "," + std::to_string(t.source + 1) + "} outside D_kappa");
    }
  }
  if (!problems.empty()) throw Error(Errc::ValidationError, problems);
  states_ = checked_pow(static_cast<std::size_t>(kappa_), agents_);
}

std::vector<std::size_t> MasModel::in_neighbors(std::size_t agent) const {
  std::vector<std::size_t> out;
  for (const auto& t : terms_.at(agent))
    if (t.source != agent) out.push_back(t.source);
  return out;
}

std::vector<int> MasModel::decode(std::size_t state) const {
  return decode_index(LogicalVector(states_, state + 1), agents_, kappa_);
}

std::vector<int> step_logical(const MasModel& model, std::span<const int> alpha, std::span<const int> u) {
  const std::size_t n = model.agents();
  const int kappa = model.kappa();
  if (alpha.size() != n || u.size() != n) throw Error(Errc::DimensionMismatch, "state/input tuple length");
  for (std::size_t j = 0; j < n; ++j) {
    if (alpha[j] < 0 || alpha[j] >= kappa || u[j] < 0 || u[j] >= kappa)
      throw Error(Errc::ValueOutOfDomain, "tuple coordinate outside D_kappa");
  }
  std::vector<int> next(n);
  for (std::size_t j = 0; j < n; ++j) {
    long acc = u[j];
    for (const auto& t : model.terms(j)) acc += static_cast<long>(t.weight) * alpha[t.source];
    next[j] = static_cast<int>(acc % kappa);
  }
  return next;
}

StructureMatrix::StructureMatrix(LogicalMatrix f) : f_(std::move(f)), states_(f_.rows()) {
  if (f_.cols() != states_ * states_) throw Error(Errc::DimensionMismatch, "structure matrix must be N x N^2");
}

StructureMatrix build_structure_matrix(const MasModel& model) {
  const std::size_t n_states = model.state_count();
  std::vector<std::vector<int>> tuples(n_states);
  for (std::size_t a = 0; a < n_states; ++a) tuples[a] = model.decode(a);

  std::vector<std::size_t> cols(n_states * n_states);
  for (std::size_t u = 0; u < n_states; ++u)
    for (std::size_t a = 0; a < n_states; ++a)
      cols[u * n_states + a] = model.encode(step_logical(model, tuples[a], tuples[u])).index();
  return StructureMatrix(LogicalMatrix(n_states, std::move(cols)));
}

ConstraintSets ConstraintSets::uniform(IndexSet states, const IndexSet& inputs) {
  const std::size_t n = states.universe();
  return ConstraintSets{std::move(states), std::vector<IndexSet>(n, inputs)};
}

IndexSet admissible_inputs(const StructureMatrix& f, const ConstraintSets& constraints, std::size_t a, std::size_t b) {
  IndexSet out(f.states());
  constraints.inputs.at(a).for_each([&](std::size_t u) {
    if (f.next(u, a) == b) out.insert(u);
  });
  return out;
}

IndexSet one_step_reach(const StructureMatrix& f, const ConstraintSets& constraints, std::size_t a) {
  if (!constraints.states.contains(a))
    throw Error(Errc::StateNotInConstraint, "state " + std::to_string(a + 1) + " is not in C_alpha");
  IndexSet out(f.states());
  constraints.inputs.at(a).for_each([&](std::size_t u) {
    const std::size_t b = f.next(u, a);
    if (constraints.states.contains(b)) out.insert(b);
  });
  return out;
}

}  // namespace iiot
