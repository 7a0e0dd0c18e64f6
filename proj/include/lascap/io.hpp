#pragma once

// Line-oriented text formats. Rationals are written as p or p/q; '#' starts a
// comment everywhere except .cnf, which uses DIMACS 'c' lines. Parsers throw
// ParseError carrying the offending line number.
//
// .vcsp   domain <label>...
//         var <name>
//         fun <name> <arity>      followed by one "<label>... <value>" line per tuple
//         con <fun> <weight> <var>...
// .lp     var <name>
//         row <rel> <rhs> <coef>*<var> ...   rel is >=, <= or =
//         obj <coef>*<var> ...
//         box                      x >= 0 and -x >= -1 for every variable
// .sdp    blocks <size>...
//         vars <count>
//         obj <c_1> ... <c_N>
//         const <block> <i> <j> <value>
//         coef <var> <block> <i> <j> <value>
// .sol    status, value, rounded, delta, shift, tolerance, iterations, budget, point
// .3lin   p 3lin <vars> <equations>, then "<a> <b> <c> <rhs>" with 1-based variables
// .cnf    DIMACS
// .graph  vertices <n>, then "edge <u> <v> <weight>" with 0-based vertices

#include <iosfwd>
#include <optional>
#include <string>

#include "lascap/encode.hpp"
#include "lascap/graph.hpp"
#include "lascap/reductions.hpp"
#include "lascap/sdp_forms.hpp"
#include "lascap/sdpsolve.hpp"
#include "lascap/vcsp.hpp"

namespace lascap {

VcspInstance parse_vcsp(std::istream& in);
void write_vcsp(std::ostream& out, const VcspInstance& inst);

ZeroOneLP parse_lp(std::istream& in);
void write_lp(std::ostream& out, const ZeroOneLP& lp);

InequalitySDP parse_sdp(std::istream& in);
void write_sdp(std::ostream& out, const InequalitySDP& sdp);

LinSystem parse_3lin(std::istream& in);
void write_3lin(std::ostream& out, const LinSystem& system);

CnfFormula parse_cnf(std::istream& in);
void write_cnf(std::ostream& out, const CnfFormula& formula);

WeightedGraph parse_graph(std::istream& in);
void write_graph(std::ostream& out, const WeightedGraph& g);

// Solver output for an inequality-form SDP.
struct SolutionRecord {
  SolveStatus status = SolveStatus::kEmpty;
  Rational value;
  std::optional<Integer> rounded;
  Rational delta;
  Rational shift;
  Rational tolerance;
  std::uint64_t iterations = 0;
  std::uint64_t budget = 0;
  RatVector point;

  bool operator==(const SolutionRecord&) const = default;
};
SolutionRecord parse_sol(std::istream& in);
void write_sol(std::ostream& out, const SolutionRecord& sol);

// File helpers; a missing file is reported as a ParseError on line 0.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

template <class Parser>
auto parse_string(const std::string& text, Parser parser);

}  // namespace lascap

#include <sstream>

template <class Parser>
auto lascap::parse_string(const std::string& text, Parser parser) {
  std::istringstream in(text);
  return parser(in);
}
