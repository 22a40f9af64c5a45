#include "iiot/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

#include "iiot/errors.hpp"
#include "iiot/simd/minplus.hpp"

namespace iiot {

const Edge* TransitionGraph::find(std::size_t from, std::size_t to) const {
  auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{from, to}, [](const Edge& e, const auto& key) {
    return std::pair{e.from, e.to} < key;
  });
  if (it == edges.end() || it->from != from || it->to != to) return nullptr;
  return &*it;
}

std::vector<std::size_t> TransitionGraph::successors(std::size_t from) const {
  std::vector<std::size_t> out;
  auto it = std::lower_bound(edges.begin(), edges.end(), from, [](const Edge& e, std::size_t f) { return e.from < f; });
  for (; it != edges.end() && it->from == from; ++it) out.push_back(it->to);
  return out;
}

TransitionGraph build_graph(const StructureMatrix& f, const ConstraintSets& constraints, const EdgeCost& cost,
                            const IndexSet& vertex_set) {
  if (!vertex_set.subset_of(constraints.states))
    throw Error(Errc::StateNotInConstraint, "graph vertices must lie in C_alpha");
  const std::size_t n = f.states();
  TransitionGraph g{vertex_set, {}, !(vertex_set == constraints.states)};

  std::vector<double> best(n);
  std::vector<std::vector<std::size_t>> argmin(n);
  vertex_set.for_each([&](std::size_t a) {
    std::fill(best.begin(), best.end(), std::numeric_limits<double>::infinity());
    for (auto& v : argmin) v.clear();
    constraints.inputs.at(a).for_each([&](std::size_t u) {
      const std::size_t b = f.next(u, a);
      if (!vertex_set.contains(b)) return;
      const double w = cost(a, u);
      if (w < best[b]) {
        best[b] = w;
        argmin[b].assign(1, u);
      } else if (w == best[b]) {
        argmin[b].push_back(u);
      }
    });
    for (std::size_t b = 0; b < n; ++b)
      if (!argmin[b].empty()) g.edges.push_back(Edge{a, b, best[b], std::move(argmin[b])});
  });
  return g;
}

TransitionGraph make_graph(std::size_t universe, std::vector<Edge> edges) {
  TransitionGraph g{IndexSet::full(universe), std::move(edges), false};
  for (const auto& e : g.edges)
    if (e.from >= universe || e.to >= universe) throw Error(Errc::IndexOutOfRange, "edge endpoint outside graph");
  std::sort(g.edges.begin(), g.edges.end(),
            [](const Edge& a, const Edge& b) { return std::pair{a.from, a.to} < std::pair{b.from, b.to}; });
  for (std::size_t i = 1; i < g.edges.size(); ++i)
    if (g.edges[i].from == g.edges[i - 1].from && g.edges[i].to == g.edges[i - 1].to)
      throw Error(Errc::ValidationError, "parallel edges are not supported");
  return g;
}

std::vector<std::vector<std::size_t>> tarjan_scc(const TransitionGraph& graph) {
  const std::size_t n = graph.universe();
  constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (const auto& e : graph.edges)
    if (graph.vertices.contains(e.from) && graph.vertices.contains(e.to)) adjacency[e.from].push_back(e.to);

  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;
  struct Frame {
    std::size_t v;
    std::size_t next_edge;
  };
  std::vector<Frame> call;

  graph.vertices.for_each([&](std::size_t root) {
    if (index[root] != unvisited) return;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& fr = call.back();
      const std::size_t v = fr.v;
      if (fr.next_edge < adjacency[v].size()) {
        const std::size_t w = adjacency[v][fr.next_edge++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  });
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

namespace {

// a/b < c/d for positive denominators.
bool fraction_less(double a, double b, double c, double d) { return a * d < c * b; }

// Splits a walk into simple cycles with a stack and keeps the one with the
// smallest mean (first found on ties).
MeanCycle best_cycle_on_walk(const std::vector<std::size_t>& walk, const std::vector<double>& w, std::size_t m) {
  std::vector<std::size_t> stack;
  std::vector<std::size_t> pos(m, std::numeric_limits<std::size_t>::max());
  MeanCycle best;
  for (std::size_t v : walk) {
    if (pos[v] != std::numeric_limits<std::size_t>::max()) {
      MeanCycle c;
      for (std::size_t k = pos[v]; k < stack.size(); ++k) c.vertices.push_back(stack[k]);
      c.vertices.push_back(v);
      c.length = c.vertices.size() - 1;
      for (std::size_t k = 0; k < c.length; ++k) c.weight += w[c.vertices[k] * m + c.vertices[k + 1]];
      if (best.length == 0 || fraction_less(c.weight, static_cast<double>(c.length), best.weight,
                                            static_cast<double>(best.length)))
        best = std::move(c);
      while (stack.size() > pos[v] + 1) {
        pos[stack.back()] = std::numeric_limits<std::size_t>::max();
        stack.pop_back();
      }
      continue;
    }
    pos[v] = stack.size();
    stack.push_back(v);
  }
  return best;
}

}  // namespace

MeanCycle karp_min_mean_cycle(const TransitionGraph& graph, const std::vector<std::size_t>& component) {
  const std::size_t m = component.size();
  if (m == 0) throw Error(Errc::NoCycle, "empty component");
  constexpr double inf = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> local(graph.universe(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < m; ++i) local[component[i]] = i;
  std::vector<double> w(m * m, inf);
  for (const auto& e : graph.edges) {
    const std::size_t a = local[e.from];
    const std::size_t b = local[e.to];
    if (a < m && b < m) w[a * m + b] = e.weight;
  }

  // h[k·m + v]: minimum weight of a k-edge walk from the source to v.
  std::vector<double> h((m + 1) * m, inf);
  std::vector<std::int64_t> pred((m + 1) * m, -1);
  h[0] = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    simd::minplus_relax(std::span<const double>(h.data() + (k - 1) * m, m), w, std::span<double>(h.data() + k * m, m),
                        std::span<std::int64_t>(pred.data() + k * m, m));
  }

  std::size_t best_v = m;
  double best_num = 0.0, best_den = 1.0;
  for (std::size_t v = 0; v < m; ++v) {
    const double hm = h[m * m + v];
    if (hm == inf) continue;
    double worst_num = 0.0, worst_den = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double hk = h[k * m + v];
      if (hk == inf) continue;
      const double num = hm - hk;
      const double den = static_cast<double>(m - k);
      if (worst_den == 0.0 || fraction_less(worst_num, worst_den, num, den)) {
        worst_num = num;
        worst_den = den;
      }
    }
    if (worst_den == 0.0) continue;
    if (best_v == m || fraction_less(worst_num, worst_den, best_num, best_den)) {
      best_v = v;
      best_num = worst_num;
      best_den = worst_den;
    }
  }
  if (best_v == m) throw Error(Errc::NoCycle, "component has no cycle");

  std::vector<std::size_t> walk(m + 1);
  walk[m] = best_v;
  for (std::size_t k = m; k > 0; --k) walk[k - 1] = static_cast<std::size_t>(pred[k * m + walk[k]]);

  MeanCycle cycle = best_cycle_on_walk(walk, w, m);
  // rotate so the smallest vertex leads
  cycle.vertices.pop_back();
  std::rotate(cycle.vertices.begin(), std::min_element(cycle.vertices.begin(), cycle.vertices.end()),
              cycle.vertices.end());
  for (auto& v : cycle.vertices) v = component[v];
  cycle.vertices.push_back(cycle.vertices.front());
  return cycle;
}

}  // namespace iiot
