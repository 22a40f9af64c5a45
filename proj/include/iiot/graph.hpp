#pragma once

// Constrained optimal state transition graph and the graph algorithms run on
// it: Tarjan's strongly connected components and Karp's minimum mean cycle.

#include <functional>
#include <vector>

#include "iiot/index_set.hpp"
#include "iiot/mas.hpp"

namespace iiot {

struct Edge {
  std::size_t from;
  std::size_t to;
  double weight;
  std::vector<std::size_t> optimal_inputs;  // Ū_{a,b}, ascending
};

struct TransitionGraph {
  IndexSet vertices;
  std::vector<Edge> edges;  // sorted by (from, to), at most one per pair
  bool restricted = false;  // true for an induced subgraph G[Φ]

  std::size_t universe() const noexcept { return vertices.universe(); }
  const Edge* find(std::size_t from, std::size_t to) const;
  /// Out-neighbours of `from`, ascending.
  std::vector<std::size_t> successors(std::size_t from) const;
};

/// Cost of applying input u in state a.
using EdgeCost = std::function<double(std::size_t state, std::size_t input)>;

/// Edge (a,b) for a, b ∈ vertex_set whenever U_{a,b} ≠ ∅, weighted with the
/// cheapest admissible input.
TransitionGraph build_graph(const StructureMatrix& f, const ConstraintSets& constraints, const EdgeCost& cost,
                            const IndexSet& vertex_set);

/// Plain weighted digraph over `universe` vertices; used for tests and tools.
TransitionGraph make_graph(std::size_t universe, std::vector<Edge> edges);

/// Components sorted internally ascending and ordered by their smallest vertex.
std::vector<std::vector<std::size_t>> tarjan_scc(const TransitionGraph& graph);

struct MeanCycle {
  double weight = 0.0;      // total weight of the cycle
  std::size_t length = 0;   // number of edges
  std::vector<std::size_t> vertices;  // closed walk, front() == back()

  double mean() const { return weight / static_cast<double>(length); }
};

/// Minimum mean cycle inside one strongly connected component. The source is
/// the smallest vertex; the returned cycle is simple and rotated to start at
/// its smallest vertex. Throws NoCycle for an acyclic component.
MeanCycle karp_min_mean_cycle(const TransitionGraph& graph, const std::vector<std::size_t>& component);

}  // namespace iiot
