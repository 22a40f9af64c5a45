#pragma once

// Performance region, largest constrained control-invariant subset,
// constrained reachable sets and the stabilizability verdict.

#include <span>
#include <vector>

#include "iiot/channel.hpp"
#include "iiot/index_set.hpp"
#include "iiot/mas.hpp"

namespace iiot {

struct PerformanceRegion {
  IndexSet omega;
  std::vector<double> thresholds;
};

/// Ω(s) = {α ∈ C_α : λ̄_i(α) ≥ s_i for every link i}.
PerformanceRegion omega_set(const SuccessTable& success, std::span<const double> thresholds,
                            const ConstraintSets& constraints);

/// Repeatedly drops states with no admissible successor left in the set.
IndexSet largest_invariant(const PerformanceRegion& region, const StructureMatrix& f, const ConstraintSets& constraints);

struct ReachabilityLayers {
  /// layers[0] = {α₀}; layers[K] holds the states first reached after K steps.
  /// layers[1..] are pairwise disjoint. α₀ itself can appear again in a later
  /// layer when a cycle returns to it.
  std::vector<IndexSet> layers;
  /// Union of layers[1..]; α₀ belongs to it only when it is re-reachable.
  IndexSet reach;
};

ReachabilityLayers reachable_layers(const StructureMatrix& f, const ConstraintSets& constraints, std::size_t initial);

struct Feasibility {
  bool feasible = false;
  IndexSet witness;  // Φ = I(Ω(s)) ∩ R(α₀)
};

Feasibility feasibility(const IndexSet& invariant, const IndexSet& reach);

}  // namespace iiot
