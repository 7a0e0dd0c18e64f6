#include "lascap/graph.hpp"

#include "lascap/errors.hpp"

namespace lascap {

void WeightedGraph::add_edge(std::size_t u, std::size_t v, const Integer& weight) {
  require(u != v, "self-loops are not allowed");
  require(u < vertices && v < vertices, "edge endpoint out of range");
  require(weight >= 0, "edge weights must be nonnegative");
  if (u > v) std::swap(u, v);
  for (auto& e : edges)
    if (e.u == u && e.v == v) {
      e.weight += weight;
      return;
    }
  edges.push_back({u, v, weight});
}

void WeightedGraph::validate() const {
  for (const auto& e : edges) {
    require(e.u != e.v, "self-loops are not allowed");
    require(e.u < vertices && e.v < vertices, "edge endpoint out of range");
    require(e.weight >= 0, "edge weights must be nonnegative");
  }
}

Integer WeightedGraph::total_weight() const {
  Integer t = 0;
  for (const auto& e : edges) t += e.weight;
  return t;
}

WeightedGraph cycle_graph(std::size_t n) {
  WeightedGraph g;
  g.vertices = n;
  if (n == 2) g.add_edge(0, 1, 1);
  if (n >= 3)
    for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, 1);
  return g;
}

WeightedGraph complete_graph(std::size_t n) {
  WeightedGraph g;
  g.vertices = n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j, 1);
  return g;
}

Integer max_cut_brute(const WeightedGraph& g) {
  g.validate();
  if (g.vertices > 26) throw TooLarge("graph too large for max-cut enumeration");
  if (g.vertices <= 1) return 0;
  // Vertex 0 stays on side 0; the other n-1 vertices walk a Gray code, so each
  // step flips one vertex and changes the cut by its incident weights.
  const std::size_t n = g.vertices;
  std::vector<std::vector<std::pair<std::size_t, Integer>>> adj(n);
  for (const auto& e : g.edges) {
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
  }
  std::vector<bool> side(n, false);
  Integer cut = 0;
  Integer best = 0;
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < steps; ++i) {
    std::size_t flip = 1 + static_cast<std::size_t>(__builtin_ctzll(i));
    for (const auto& [w, weight] : adj[flip]) {
      if (side[w] == side[flip])
        cut += weight;
      else
        cut -= weight;
    }
    side[flip] = !side[flip];
    if (cut > best) best = cut;
  }
  return best;
}

}  // namespace lascap
