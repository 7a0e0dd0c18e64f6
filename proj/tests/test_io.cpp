#include <random>
#include <sstream>

#include "corpus.hpp"
#include "doctest.h"
#include "lascap/errors.hpp"
#include "lascap/io.hpp"
#include "lascap/lasserre.hpp"

using namespace lascap;
using namespace lascap::testing;

namespace {

template <class T, class W, class P>
T round_trip(const T& value, W writer, P parser) {
  std::ostringstream out;
  writer(out, value);
  std::istringstream in(out.str());
  T back = parser(in);
  std::ostringstream again;
  writer(again, back);
  CHECK(again.str() == out.str());  // byte-identical re-emission
  return back;
}

bool same_instance(const VcspInstance& a, const VcspInstance& b) {
  if (a.domain.labels != b.domain.labels || a.variables != b.variables) return false;
  if (a.functions.size() != b.functions.size() || a.constraints.size() != b.constraints.size()) return false;
  for (std::size_t i = 0; i < a.functions.size(); ++i)
    if (a.functions[i].name != b.functions[i].name || a.functions[i].arity != b.functions[i].arity ||
        a.functions[i].table != b.functions[i].table)
      return false;
  for (std::size_t i = 0; i < a.constraints.size(); ++i)
    if (a.constraints[i].function != b.constraints[i].function || a.constraints[i].weight != b.constraints[i].weight ||
        a.constraints[i].scope != b.constraints[i].scope)
      return false;
  return true;
}

bool same_sdp(const InequalitySDP& a, const InequalitySDP& b) {
  if (a.block_sizes != b.block_sizes || a.objective != b.objective || a.num_vars() != b.num_vars()) return false;
  if (a.dense_constant() != b.dense_constant()) return false;
  for (std::size_t v = 0; v < a.num_vars(); ++v)
    if (a.dense_coefficient(v) != b.dense_coefficient(v)) return false;
  return true;
}

// Line number carried by the ParseError thrown on `text`.
template <class P>
std::size_t error_line(const std::string& text, P parser) {
  try {
    parse_string(text, parser);
  } catch (const ParseError& e) {
    return e.line();
  }
  return SIZE_MAX;
}

}  // namespace

TEST_CASE("vcsp round trip") {
  VcspInstance tri = triangle_maxcut();
  CHECK(same_instance(round_trip(tri, write_vcsp, parse_vcsp), tri));
  CHECK(same_instance(round_trip(empty_instance(), write_vcsp, parse_vcsp), empty_instance()));
  VcspInstance u = unary_instance({3, 7}, 2);
  CHECK(same_instance(round_trip(u, write_vcsp, parse_vcsp), u));

  // hand-written file, tuples in any order, comments
  const std::string text =
      "# 2-colouring of an edge\n"
      "domain r g\n"
      "var a\nvar b\n"
      "fun neq 2\n"
      "g g 0\nr g 1\ng r 1\nr r 0   # trailing comment\n"
      "con neq 5 a b\n";
  VcspInstance e = parse_string(text, parse_vcsp);
  CHECK(e.domain.labels == std::vector<std::string>{"r", "g"});
  CHECK(e.functions[0].table == std::vector<Integer>{0, 1, 1, 0});
  CHECK(brute_force_opt(e).value == 5);
}

TEST_CASE("vcsp parse errors carry line numbers") {
  CHECK(error_line("domain 0 1\nvar x\nfun f 1\n0 1\n", parse_vcsp) == 3);           // missing tuple
  CHECK(error_line("domain 0 1\nvar x\ncon f 1 x\n", parse_vcsp) == 3);             // unknown function
  CHECK(error_line("domain 0 1\nvar x\nfun f 1\n0 1\n1 -2\n", parse_vcsp) == 5);     // negative value
  CHECK(error_line("domain 0 1\nvar x\nfun f 1\n0 1\n1 x\n", parse_vcsp) == 5);      // not a number
  CHECK(error_line("domain 0 1\nvar x\nfun f 1\n0 1\n0 2\n", parse_vcsp) == 5);      // duplicate tuple
  CHECK(error_line("domain 0 1\nvar x\nfun f 2\n0 0 1\n0 1 1\n1 0 1\n1 1 1\ncon f 1 x\n", parse_vcsp) == 8);
  CHECK(error_line("domain 0 0\n", parse_vcsp) == 1);
  CHECK(error_line("var x\n", parse_vcsp) == 1);
  CHECK(error_line("domain 0 1\nbogus\n", parse_vcsp) == 2);
  CHECK(error_line("domain var 1\n", parse_vcsp) == 1);
}

TEST_CASE("lp round trip") {
  for (const auto& [name, lp] : small_lp_corpus()) {
    ZeroOneLP back = round_trip(lp, write_lp, parse_lp);
    CHECK(back.names == lp.names);
    CHECK(back.a == lp.a);
    CHECK(back.b == lp.b);
    CHECK(back.c == lp.c);
  }
  ZeroOneLP ilp = to_ilp(triangle_maxcut());
  ZeroOneLP back = round_trip(ilp, write_lp, parse_lp);
  CHECK(back.a == ilp.a);
  CHECK(back.b == ilp.b);
  CHECK(back.c == ilp.c);

  // Without box rows nothing is appended.
  ZeroOneLP bare;
  bare.names = {"x"};
  bare.a = RatMatrix::from_rows({{Rational(1, 2)}});
  bare.b = {Rational(-3, 4)};
  bare.c = {2};
  ZeroOneLP b2 = round_trip(bare, write_lp, parse_lp);
  CHECK(b2.num_rows() == 1);
  CHECK(b2.a == bare.a);
}

TEST_CASE("lp relations and terms") {
  ZeroOneLP lp = parse_string("var x\nvar y\nrow <= 1 x y\nrow = 1/2 2*x -y\nobj 3*x -1/2*y\nbox\n", parse_lp);
  CHECK(lp.num_rows() == 3 + 4);
  CHECK(lp.a.row(0) == RatVector{-1, -1});
  CHECK(lp.b[0] == -1);
  CHECK(lp.a.row(1) == RatVector{2, -1});
  CHECK(lp.a.row(2) == RatVector{-2, 1});
  CHECK(lp.b[2] == Rational(-1, 2));
  CHECK(lp.c == RatVector{3, Rational(-1, 2)});
  CHECK(error_line("var x\nrow >= 1 z\n", parse_lp) == 2);
  CHECK(error_line("var x\nrow >> 1 x\n", parse_lp) == 2);
  CHECK(error_line("var x\nrow >= 1/0 x\n", parse_lp) == 2);
  CHECK(error_line("var x\nobj x\nvar y\n", parse_lp) == 3);
}

TEST_CASE("sdp round trip") {
  for (const auto& [name, lp] : small_lp_corpus())
    for (std::size_t t = 0; t <= 1; ++t) {
      InequalitySDP sdp = lift(lp, t).sdp;
      CHECK(same_sdp(round_trip(sdp, write_sdp, parse_sdp), sdp));
    }
  InequalitySDP empty;
  CHECK(same_sdp(round_trip(empty, write_sdp, parse_sdp), empty));
  CHECK(error_line("blocks 2\nvars 1\nobj 1\ncoef 0 0 2 0 1\n", parse_sdp) == 4);
  CHECK(error_line("blocks 2\nvars 1\nobj 1 2\n", parse_sdp) == 3);
  CHECK(error_line("vars 1\nconst 0 0 0 1\n", parse_sdp) == 2);
  // lower-triangle entries are normalized
  InequalitySDP s = parse_string("blocks 2\nvars 1\nobj 1\ncoef 0 0 1 0 1\n", parse_sdp);
  CHECK(s.coefficients[0][0].i == 0);
  CHECK(s.coefficients[0][0].j == 1);
}

TEST_CASE("3lin, cnf and graph round trips") {
  LinSystem sys{4, {{{0, 1, 2}, false}, {{1, 2, 3}, true}}};
  LinSystem back = round_trip(sys, write_3lin, parse_3lin);
  CHECK(back.num_vars == 4);
  REQUIRE(back.equations.size() == 2);
  CHECK(back.equations[1].vars == std::array<std::size_t, 3>{1, 2, 3});
  CHECK(back.equations[1].rhs);

  CnfFormula f = threelin_to_threesat(sys);
  CnfFormula fb = round_trip(f, write_cnf, parse_cnf);
  CHECK(fb.clauses == f.clauses);
  CHECK(fb.num_vars == f.num_vars);
  // DIMACS allows comments and clauses spanning lines.
  CnfFormula g = parse_string("c hello\np cnf 3 2\n1 -2\n3 0 -1 2 3\n0\n", parse_cnf);
  CHECK(g.clauses == std::vector<Clause>{{1, -2, 3}, {-1, 2, 3}});

  WeightedGraph gr = threesat_to_maxcut(f).graph;
  WeightedGraph gb = round_trip(gr, write_graph, parse_graph);
  CHECK(gb.vertices == gr.vertices);
  CHECK(gb.edges.size() == gr.edges.size());
  CHECK(max_cut_brute(cycle_graph(5)) == max_cut_brute(round_trip(cycle_graph(5), write_graph, parse_graph)));

  CHECK(error_line("p 3lin 3 1\n1 1 2 0\n", parse_3lin) == 2);
  CHECK(error_line("p 3lin 3 2\n1 2 3 0\n", parse_3lin) == 2);
  CHECK(error_line("p 3lin 3 1\n1 2 4 0\n", parse_3lin) == 2);
  CHECK(error_line("p cnf 3 1\n1 2 0\n", parse_cnf) == 2);
  CHECK(error_line("p cnf 3 1\n1 2 3\n", parse_cnf) == 2);
  CHECK(error_line("p cnf 3 1\n1 2 5 0\n", parse_cnf) == 2);
  CHECK(error_line("vertices 2\nedge 0 0 1\n", parse_graph) == 2);
  CHECK(error_line("vertices 2\nedge 0 2 1\n", parse_graph) == 2);
  CHECK(error_line("edge 0 1 1\n", parse_graph) == 1);
}

TEST_CASE("sol round trip") {
  SolutionRecord s;
  s.status = SolveStatus::kOptimal;
  s.value = Rational(201, 200);
  s.rounded = Integer(1);
  s.delta = Rational(1, 4);
  s.shift = Rational(1, 16);
  s.tolerance = Rational(1, 512);
  s.iterations = 17;
  s.budget = 400;
  s.point = {Rational(1, 3), 0, -2};
  CHECK(round_trip(s, write_sol, parse_sol) == s);
  SolutionRecord e;
  CHECK(round_trip(e, write_sol, parse_sol) == e);
  CHECK(error_line("value 1\n", parse_sol) == 1);
  CHECK(error_line("status maybe\n", parse_sol) == 1);
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(read_file("/nonexistent/file.vcsp"), ParseError);
}
