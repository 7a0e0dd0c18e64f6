#pragma once

// 3LIN -> 3SAT -> MAXCUT, plus exhaustive satisfiability oracles.

#include <array>
#include <string>
#include <vector>

#include "lascap/graph.hpp"
#include "lascap/rational.hpp"

namespace lascap {

// x_a + x_b + x_c = rhs (mod 2) over distinct variables.
struct LinEquation {
  std::array<std::size_t, 3> vars{};
  bool rhs = false;
};

struct LinSystem {
  std::size_t num_vars = 0;
  std::vector<LinEquation> equations;
  void validate() const;
};

// DIMACS literals: +(v+1) for x_v, -(v+1) for its negation.
using Clause = std::array<int, 3>;

struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<Clause> clauses;
  void validate() const;  // literals in range, three distinct variables per clause
};

// Each rhs-0 equation becomes the four even-negation clauses on its
// variables, each rhs-1 equation the four odd-negation clauses. Those
// clauses exclude exactly the assignments of the stated parity, so the
// formula holds at the complement of a solution; satisfiability is
// preserved either way.
CnfFormula threelin_to_threesat(const LinSystem& system);

struct GadgetResult {
  WeightedGraph graph;
  Integer threshold;
};

// Clause (l1 v l2 v l3) is NAE(l1, l2, l3, F) with F a reference vertex,
// split into NAE(l1, l2, z) and NAE(~z, l3, F) and drawn as two triangles.
// Literal pairs x/~x and z/~z are tied by edges of weight 4m+1.
// Vertices: 0 = F, then x_i, ~x_i for every variable that occurs, then
// z_c, ~z_c per clause. |V| <= 8m+1 and |E| <= 10m.
// F satisfiable iff max-cut(graph) >= threshold.
GadgetResult threesat_to_maxcut(const CnfFormula& formula);

constexpr std::size_t kBruteSatMaxVars = 24;
bool brute_sat(const CnfFormula& formula);
bool brute_lin(const LinSystem& system);

std::string clause_to_string(const Clause& c);

}  // namespace lascap
