#pragma once

// Mobile agents with modular-arithmetic dynamics over D_κ = {0,...,κ-1}:
//   α_j(k+1) = Σ_{l ∈ I_j ∪ {j}} a_{j,l} α_l(k) + u_j(k)   (mod κ)
// and the equivalent logical form α(k+1) = F u(k) α(k) with N = κ^n.

#include <span>
#include <vector>

#include "iiot/index_set.hpp"
#include "iiot/stp.hpp"

namespace iiot {

struct CouplingTerm {
  std::size_t source;  // 0-based agent index l
  int weight;          // a_{j,l} in D_κ
};

class MasModel {
 public:
  /// `terms[j]` lists the weighted contributions to agent j (self term included
  /// when present). Throws ValidationError on bad indices or weights.
  MasModel(std::size_t agents, int kappa, std::vector<std::vector<CouplingTerm>> terms);

  std::size_t agents() const noexcept { return agents_; }
  int kappa() const noexcept { return kappa_; }
  std::size_t state_count() const noexcept { return states_; }
  const std::vector<CouplingTerm>& terms(std::size_t agent) const { return terms_.at(agent); }
  /// I_j: declared in-neighbours other than j itself.
  std::vector<std::size_t> in_neighbors(std::size_t agent) const;

  LogicalVector encode(std::span<const int> tuple) const { return encode_tuple(tuple, kappa_); }
  std::vector<int> decode(std::size_t state) const;

 private:
  std::size_t agents_;
  int kappa_;
  std::size_t states_;
  std::vector<std::vector<CouplingTerm>> terms_;
};

std::vector<int> step_logical(const MasModel& model, std::span<const int> alpha, std::span<const int> u);

/// F as an N × N² logical matrix; column (u, a) sits at position u·N + a.
class StructureMatrix {
 public:
  explicit StructureMatrix(LogicalMatrix f);

  std::size_t states() const noexcept { return states_; }
  const LogicalMatrix& matrix() const noexcept { return f_; }
  /// 0-based successor of state `a` under input `u`.
  std::size_t next(std::size_t u, std::size_t a) const { return f_.column(u * states_ + a) - 1; }

 private:
  LogicalMatrix f_;
  std::size_t states_;
};

StructureMatrix build_structure_matrix(const MasModel& model);

/// C_α and the state-dependent admissible input sets C_u(α).
struct ConstraintSets {
  IndexSet states;
  std::vector<IndexSet> inputs;  // indexed by state, each over N inputs

  std::size_t universe() const noexcept { return states.universe(); }
  /// Same admissible input set for every state.
  static ConstraintSets uniform(IndexSet states, const IndexSet& inputs);
};

/// U_{a,b}: admissible inputs in C_u(a) that steer a to b in one step.
IndexSet admissible_inputs(const StructureMatrix& f, const ConstraintSets& constraints, std::size_t a, std::size_t b);

/// R_1(a) = {successors of a under C_u(a)} ∩ C_α. Throws StateNotInConstraint if a ∉ C_α.
IndexSet one_step_reach(const StructureMatrix& f, const ConstraintSets& constraints, std::size_t a);

}  // namespace iiot
