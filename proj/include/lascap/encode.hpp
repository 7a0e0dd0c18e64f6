#pragma once

// VCSP -> 0-1 integer program, its basic LP relaxation, and the MAXCUT /
// MAXCSP convenience encodings.

#include <optional>
#include <string>
#include <vector>

#include "lascap/graph.hpp"
#include "lascap/matrix.hpp"
#include "lascap/vcsp.hpp"

namespace lascap {

// Polytope {x | A x >= b}, objective max <c,x>, over named variables meant to
// take values in {0,1}.
struct ZeroOneLP {
  std::vector<std::string> names;
  RatMatrix a;
  RatVector b;
  RatVector c;

  std::size_t num_vars() const { return names.size(); }
  std::size_t num_rows() const { return b.size(); }
  void validate() const;
};

// Appends x >= 0 and -x >= -1 for every variable.
void append_box_rows(ZeroOneLP& lp);
// Generic 0-1 LP from rows A x >= b; box rows are appended.
ZeroOneLP make_zero_one_lp(std::vector<std::string> names, const std::vector<RatVector>& rows,
                           const RatVector& b, RatVector c);

// Variable layout of to_ilp: mu(v,a) block first, then lambda(c,x), each in
// lexicographic order.
struct IlpLayout {
  std::size_t domain_size = 0;
  std::size_t num_variables = 0;
  std::vector<std::size_t> lambda_offset;  // per constraint
  std::size_t mu(std::size_t v, std::size_t a) const { return v * domain_size + a; }
  std::size_t lambda(std::size_t c, std::size_t tuple_index) const { return lambda_offset[c] + tuple_index; }
};

IlpLayout ilp_layout(const VcspInstance& inst);
ZeroOneLP to_ilp(const VcspInstance& inst);
// The 0-1 point of to_ilp(inst) induced by an assignment.
RatVector ilp_point(const VcspInstance& inst, const Assignment& h);

// Optimum of to_ilp(inst) with integrality dropped.
Rational blp_value(const VcspInstance& inst);

// max <c,x> over the 0-1 points of lp by enumeration (<= 24 variables);
// nullopt when no 0-1 point is feasible.
std::optional<Rational> integer_optimum(const ZeroOneLP& lp);
std::vector<RatVector> integer_feasible_points(const ZeroOneLP& lp);

VcspInstance maxcut_to_vcsp(const WeightedGraph& g);

// Relational CSP over a fixed domain: relations are tuple sets.
struct Relation {
  std::string name;
  std::size_t arity = 1;
  std::vector<std::vector<std::size_t>> tuples;
};

struct RelationalInstance {
  Domain domain;
  std::vector<std::string> variables;
  std::vector<Relation> relations;
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> constraints;  // (relation, scope)
};

VcspInstance maxcsp_to_vcsp(const RelationalInstance& inst);

}  // namespace lascap
