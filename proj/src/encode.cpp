#include "lascap/encode.hpp"

#include "lascap/errors.hpp"
#include "lascap/exactlin.hpp"

namespace lascap {

void ZeroOneLP::validate() const {
  require(a.cols() == names.size() && a.rows() == b.size() && c.size() == names.size(),
          "ZeroOneLP: dimension mismatch");
}

void append_box_rows(ZeroOneLP& lp) {
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.num_rows();
  RatMatrix a(m + 2 * n, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = lp.a(i, j);
  lp.b.resize(m + 2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    a(m + 2 * j, j) = 1;
    lp.b[m + 2 * j] = 0;
    a(m + 2 * j + 1, j) = -1;
    lp.b[m + 2 * j + 1] = -1;
  }
  lp.a = std::move(a);
}

ZeroOneLP make_zero_one_lp(std::vector<std::string> names, const std::vector<RatVector>& rows,
                           const RatVector& b, RatVector c) {
  ZeroOneLP lp;
  lp.names = std::move(names);
  lp.a = rows.empty() ? RatMatrix(0, lp.names.size()) : RatMatrix::from_rows(rows);
  lp.b = b;
  lp.c = std::move(c);
  lp.validate();
  append_box_rows(lp);
  return lp;
}

IlpLayout ilp_layout(const VcspInstance& inst) {
  IlpLayout layout;
  layout.domain_size = inst.domain.size();
  std::size_t next = inst.variables.size() * layout.domain_size;
  for (const auto& c : inst.constraints) {
    layout.lambda_offset.push_back(next);
    next += tuple_count(layout.domain_size, inst.functions[c.function].arity);
  }
  layout.num_variables = next;
  return layout;
}

ZeroOneLP to_ilp(const VcspInstance& inst) {
  inst.validate();
  const IlpLayout layout = ilp_layout(inst);
  const std::size_t d = layout.domain_size;
  const std::size_t n = layout.num_variables;

  ZeroOneLP lp;
  lp.names.resize(n);
  lp.c.assign(n, Rational(0));
  for (std::size_t v = 0; v < inst.variables.size(); ++v)
    for (std::size_t a = 0; a < d; ++a)
      lp.names[layout.mu(v, a)] = "mu[" + inst.variables[v] + "," + inst.domain.labels[a] + "]";
  for (std::size_t ci = 0; ci < inst.constraints.size(); ++ci) {
    const auto& con = inst.constraints[ci];
    const auto& f = inst.functions[con.function];
    for (std::size_t x = 0; x < f.table.size(); ++x) {
      std::string label;
      for (auto a : decode_tuple(x, d, f.arity)) label += (label.empty() ? "" : ",") + inst.domain.labels[a];
      lp.names[layout.lambda(ci, x)] = "lam[" + std::to_string(ci) + ",(" + label + ")]";
      lp.c[layout.lambda(ci, x)] = Rational(con.weight * f.table[x]);
    }
  }

  // Each equality row e.x = r becomes e.x >= r and -e.x >= -r.
  std::vector<RatVector> rows;
  RatVector rhs;
  auto add_equality = [&](RatVector row, const Rational& r) {
    RatVector neg(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) neg[j] = -row[j];
    rows.push_back(std::move(row));
    rhs.push_back(r);
    rows.push_back(std::move(neg));
    rhs.push_back(-r);
  };
  for (std::size_t ci = 0; ci < inst.constraints.size(); ++ci) {
    const auto& con = inst.constraints[ci];
    const auto& f = inst.functions[con.function];
    for (std::size_t i = 0; i < f.arity; ++i)
      for (std::size_t a = 0; a < d; ++a) {
        RatVector row(n);
        for (std::size_t x = 0; x < f.table.size(); ++x)
          if (decode_tuple(x, d, f.arity)[i] == a) row[layout.lambda(ci, x)] = 1;
        row[layout.mu(con.scope[i], a)] -= 1;
        add_equality(std::move(row), 0);
      }
  }
  for (std::size_t v = 0; v < inst.variables.size(); ++v) {
    RatVector row(n);
    for (std::size_t a = 0; a < d; ++a) row[layout.mu(v, a)] = 1;
    add_equality(std::move(row), 1);
  }
  lp.a = rows.empty() ? RatMatrix(0, n) : RatMatrix::from_rows(rows);
  lp.b = std::move(rhs);
  append_box_rows(lp);
  return lp;
}

RatVector ilp_point(const VcspInstance& inst, const Assignment& h) {
  require(h.size() == inst.variables.size(), "assignment is not total");
  const IlpLayout layout = ilp_layout(inst);
  const std::size_t d = layout.domain_size;
  RatVector x(layout.num_variables);
  for (std::size_t v = 0; v < h.size(); ++v) x[layout.mu(v, h[v])] = 1;
  for (std::size_t ci = 0; ci < inst.constraints.size(); ++ci) {
    std::vector<std::size_t> tuple;
    for (auto v : inst.constraints[ci].scope) tuple.push_back(h[v]);
    x[layout.lambda(ci, encode_tuple(tuple, d))] = 1;
  }
  return x;
}

Rational blp_value(const VcspInstance& inst) {
  ZeroOneLP lp = to_ilp(inst);
  if (lp.num_vars() == 0) return 0;
  LpResult r = lp_optimize(lp.a, lp.b, lp.c);
  require(r.status == LpStatus::kOptimal, "basic LP must be feasible and bounded");
  return r.value;
}

std::vector<RatVector> integer_feasible_points(const ZeroOneLP& lp) {
  lp.validate();
  const std::size_t n = lp.num_vars();
  if (n > 24) throw TooLarge("too many variables for 0-1 enumeration");
  std::vector<RatVector> points;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    RatVector x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = (mask >> (n - 1 - j)) & 1 ? 1 : 0;
    RatVector ax = lp.a * x;
    bool ok = true;
    for (std::size_t r = 0; r < lp.num_rows() && ok; ++r) ok = ax[r] >= lp.b[r];
    if (ok) points.push_back(std::move(x));
  }
  return points;
}

std::optional<Rational> integer_optimum(const ZeroOneLP& lp) {
  std::optional<Rational> best;
  for (const auto& x : integer_feasible_points(lp)) {
    Rational v = dot(lp.c, x);
    if (!best || v > *best) best = v;
  }
  return best;
}

VcspInstance maxcut_to_vcsp(const WeightedGraph& g) {
  g.validate();
  VcspInstance inst;
  inst.domain.labels = {"0", "1"};
  for (std::size_t v = 0; v < g.vertices; ++v) inst.variables.push_back("v" + std::to_string(v));
  std::size_t cut = inst.add_function({"cut", 2, {0, 1, 1, 0}});
  for (const auto& e : g.edges) inst.add_constraint(cut, e.weight, {e.u, e.v});
  return inst;
}

VcspInstance maxcsp_to_vcsp(const RelationalInstance& rel) {
  VcspInstance inst;
  inst.domain = rel.domain;
  inst.variables = rel.variables;
  const std::size_t d = rel.domain.size();
  for (const auto& r : rel.relations) {
    ValuedFunction f{r.name, r.arity, std::vector<Integer>(tuple_count(d, r.arity), 0)};
    for (const auto& t : r.tuples) {
      require(t.size() == r.arity, "relation tuple length differs from arity");
      f.table[encode_tuple(t, d)] = 1;
    }
    inst.add_function(std::move(f));
  }
  for (const auto& [relation, scope] : rel.constraints) inst.add_constraint(relation, 1, scope);
  inst.validate();
  return inst;
}

}  // namespace lascap
