#pragma once

#include <vector>

#include "lascap/rational.hpp"

namespace lascap {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  Integer weight = 1;
};

// Undirected, nonnegative integer weights, no self-loops.
struct WeightedGraph {
  std::size_t vertices = 0;
  std::vector<Edge> edges;

  // Adds weight to the edge {u,v}, creating it if needed.
  void add_edge(std::size_t u, std::size_t v, const Integer& weight);
  void validate() const;
  Integer total_weight() const;
};

WeightedGraph cycle_graph(std::size_t n);
WeightedGraph complete_graph(std::size_t n);

// Max-cut value by Gray-code enumeration over vertex subsets with vertex 0
// fixed on one side. Throws TooLarge above 26 vertices.
Integer max_cut_brute(const WeightedGraph& g);

}  // namespace lascap
