#include "iiot/stabilization.hpp"

#include <string>

#include "iiot/errors.hpp"

namespace iiot {

PerformanceRegion omega_set(const SuccessTable& success, std::span<const double> thresholds,
                            const ConstraintSets& constraints) {
  if (thresholds.size() != success.links)
    throw Error(Errc::DimensionMismatch, "need one threshold per link");
  if (success.states != constraints.universe())
    throw Error(Errc::DimensionMismatch, "success table and constraints disagree on N");
  for (double s : thresholds)
    if (!(s >= 0.0 && s <= 1.0)) throw Error(Errc::ValueOutOfRange, "threshold outside [0,1]");

  PerformanceRegion region{IndexSet(constraints.universe()), {thresholds.begin(), thresholds.end()}};
  constraints.states.for_each([&](std::size_t a) {
    for (std::size_t i = 0; i < success.links; ++i)
      if (success.at(i, a) < thresholds[i]) return;
    region.omega.insert(a);
  });
  return region;
}

IndexSet largest_invariant(const PerformanceRegion& region, const StructureMatrix& f, const ConstraintSets& constraints) {
  IndexSet current = region.omega & constraints.states;
  for (;;) {
    IndexSet next(current.universe());
    current.for_each([&](std::size_t a) {
      if (one_step_reach(f, constraints, a).intersects(current)) next.insert(a);
    });
    if (next == current) return current;
    current = std::move(next);
  }
}

ReachabilityLayers reachable_layers(const StructureMatrix& f, const ConstraintSets& constraints, std::size_t initial) {
  if (!constraints.states.contains(initial)) {
    throw Error(Errc::InitialStateViolatesConstraint,
                "initial state " + std::to_string(initial + 1) + " is not in C_alpha");
  }
  const std::size_t n = constraints.universe();
  ReachabilityLayers out{{IndexSet(n, {initial})}, IndexSet(n)};
  for (;;) {
    IndexSet layer(n);
    out.layers.back().for_each([&](std::size_t a) { layer |= one_step_reach(f, constraints, a); });
    layer -= out.reach;
    if (layer.empty()) break;
    out.reach |= layer;
    out.layers.push_back(std::move(layer));
  }
  return out;
}

Feasibility feasibility(const IndexSet& invariant, const IndexSet& reach) {
  Feasibility out{false, invariant & reach};
  out.feasible = !out.witness.empty();
  return out;
}

}  // namespace iiot
