#include "lascap/io.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "lascap/errors.hpp"

namespace lascap {

namespace {

// Tokenized non-empty lines with their 1-based line numbers.
struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> read_lines(std::istream& in, char comment) {
  std::vector<Line> out;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (comment == '#') {
      if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
    } else {
      std::size_t first = raw.find_first_not_of(" \t\r");
      if (first != std::string::npos && raw[first] == comment) continue;
    }
    std::istringstream ss(raw);
    Line line{number, {}};
    std::string tok;
    while (ss >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

Rational rational_at(const Line& line, std::size_t k) {
  if (k >= line.tokens.size()) throw ParseError("missing number in field " + std::to_string(k + 1), line.number);
  try {
    return parse_rational(line.tokens[k]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(e.what()) + " in field " + std::to_string(k + 1), line.number);
  }
}

Integer integer_at(const Line& line, std::size_t k) {
  Rational q = rational_at(line, k);
  if (q.get_den() != 1) throw ParseError("expected an integer in field " + std::to_string(k + 1), line.number);
  return q.get_num();
}

std::size_t index_at(const Line& line, std::size_t k) {
  Integer z = integer_at(line, k);
  if (z < 0 || !z.fits_ulong_p()) throw ParseError("expected a nonnegative index in field " + std::to_string(k + 1), line.number);
  return z.get_ui();
}

void expect_fields(const Line& line, std::size_t n) {
  if (line.tokens.size() != n)
    throw ParseError("'" + line.tokens[0] + "' expects " + std::to_string(n - 1) + " fields, got " +
                         std::to_string(line.tokens.size() - 1),
                     line.number);
}

// Runs a structural validator and reports its complaint against `line`.
template <class F>
void validated(F&& f, std::size_t line) {
  try {
    f();
  } catch (const ContractViolation& e) {
    throw ParseError(e.what(), line);
  }
}

void check_name(const std::string& s) {
  require(!s.empty(), "names must be nonempty");
  for (char ch : s) require(!std::isspace(static_cast<unsigned char>(ch)) && ch != '#', "names must not contain whitespace or '#'");
}

bool is_vcsp_keyword(const std::string& s) { return s == "domain" || s == "var" || s == "fun" || s == "con"; }

std::size_t last_line(const std::vector<Line>& lines) { return lines.empty() ? 0 : lines.back().number; }

}  // namespace

// ---------------------------------------------------------------------------
// .vcsp

VcspInstance parse_vcsp(std::istream& in) {
  auto lines = read_lines(in, '#');
  VcspInstance inst;
  std::map<std::string, std::size_t> var_index, fun_index;
  std::size_t pending = 0;  // table lines still owed by the last 'fun'
  std::vector<bool> seen;
  std::size_t fun_line = 0;
  bool have_domain = false;

  for (const auto& line : lines) {
    const std::string& key = line.tokens[0];
    if (pending > 0 && key != "fun" && key != "var" && key != "con" && key != "domain") {
      ValuedFunction& f = inst.functions.back();
      expect_fields(line, f.arity + 1);
      std::vector<std::size_t> tuple(f.arity);
      for (std::size_t i = 0; i < f.arity; ++i) {
        tuple[i] = inst.domain.find(line.tokens[i]);
        if (tuple[i] == inst.domain.size()) throw ParseError("unknown domain label '" + line.tokens[i] + "'", line.number);
      }
      std::size_t idx = encode_tuple(tuple, inst.domain.size());
      if (seen[idx]) throw ParseError("duplicate tuple for function '" + f.name + "'", line.number);
      seen[idx] = true;
      Integer value = integer_at(line, f.arity);
      if (value < 0) throw ParseError("function values must be nonnegative", line.number);
      f.table[idx] = value;
      --pending;
      continue;
    }
    if (pending > 0)
      throw ParseError("function '" + inst.functions.back().name + "' is missing " + std::to_string(pending) + " tuples",
                       line.number);

    if (key == "domain") {
      if (have_domain) throw ParseError("domain declared twice", line.number);
      if (line.tokens.size() < 2) throw ParseError("domain needs at least one label", line.number);
      inst.domain.labels.assign(line.tokens.begin() + 1, line.tokens.end());
      for (const auto& l : inst.domain.labels)
        if (is_vcsp_keyword(l)) throw ParseError("domain label '" + l + "' is a reserved word", line.number);
      validated([&] { VcspInstance probe; probe.domain = inst.domain; probe.validate(); }, line.number);
      have_domain = true;
    } else if (key == "var") {
      expect_fields(line, 2);
      if (!var_index.emplace(line.tokens[1], inst.variables.size()).second)
        throw ParseError("variable '" + line.tokens[1] + "' declared twice", line.number);
      inst.variables.push_back(line.tokens[1]);
    } else if (key == "fun") {
      if (!have_domain) throw ParseError("'fun' before 'domain'", line.number);
      expect_fields(line, 3);
      ValuedFunction f;
      f.name = line.tokens[1];
      f.arity = index_at(line, 2);
      if (f.arity == 0) throw ParseError("arity must be positive", line.number);
      std::size_t count;
      try {
        count = tuple_count(inst.domain.size(), f.arity);
      } catch (const TooLarge& e) {
        throw ParseError(e.what(), line.number);
      }
      f.table.assign(count, 0);
      if (!fun_index.emplace(f.name, inst.functions.size()).second)
        throw ParseError("function '" + f.name + "' declared twice", line.number);
      inst.functions.push_back(std::move(f));
      seen.assign(count, false);
      pending = count;
      fun_line = line.number;
    } else if (key == "con") {
      if (line.tokens.size() < 4) throw ParseError("'con' needs a function, a weight and a scope", line.number);
      auto fit = fun_index.find(line.tokens[1]);
      if (fit == fun_index.end()) throw ParseError("unknown function '" + line.tokens[1] + "'", line.number);
      Integer weight = integer_at(line, 2);
      if (weight < 0) throw ParseError("weights must be nonnegative", line.number);
      std::vector<std::size_t> scope;
      for (std::size_t i = 3; i < line.tokens.size(); ++i) {
        auto vit = var_index.find(line.tokens[i]);
        if (vit == var_index.end()) throw ParseError("unknown variable '" + line.tokens[i] + "'", line.number);
        scope.push_back(vit->second);
      }
      if (scope.size() != inst.functions[fit->second].arity)
        throw ParseError("scope length does not match the arity of '" + line.tokens[1] + "'", line.number);
      inst.constraints.push_back({fit->second, weight, std::move(scope)});
    } else {
      throw ParseError("unknown directive '" + key + "'", line.number);
    }
  }
  if (pending > 0)
    throw ParseError("function '" + inst.functions.back().name + "' is missing " + std::to_string(pending) + " tuples",
                     fun_line);
  if (!have_domain) throw ParseError("missing 'domain' line", last_line(lines));
  validated([&] { inst.validate(); }, last_line(lines));
  return inst;
}

void write_vcsp(std::ostream& out, const VcspInstance& inst) {
  inst.validate();
  for (const auto& l : inst.domain.labels) {
    check_name(l);
    require(!is_vcsp_keyword(l), "domain labels must not be directive keywords");
  }
  for (const auto& v : inst.variables) check_name(v);
  out << "domain";
  for (const auto& l : inst.domain.labels) out << ' ' << l;
  out << '\n';
  for (const auto& v : inst.variables) out << "var " << v << '\n';
  const std::size_t d = inst.domain.size();
  for (const auto& f : inst.functions) {
    check_name(f.name);
    out << "fun " << f.name << ' ' << f.arity << '\n';
    for (std::size_t idx = 0; idx < f.table.size(); ++idx) {
      for (auto a : decode_tuple(idx, d, f.arity)) out << inst.domain.labels[a] << ' ';
      out << f.table[idx] << '\n';
    }
  }
  for (const auto& c : inst.constraints) {
    out << "con " << inst.functions[c.function].name << ' ' << c.weight;
    for (auto v : c.scope) out << ' ' << inst.variables[v];
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// .lp

namespace {

RatVector parse_terms(const Line& line, std::size_t from, const std::map<std::string, std::size_t>& vars) {
  RatVector row(vars.size());
  for (std::size_t k = from; k < line.tokens.size(); ++k) {
    const std::string& tok = line.tokens[k];
    Rational coef = 1;
    std::string name = tok;
    if (auto star = tok.find('*'); star != std::string::npos) {
      try {
        coef = parse_rational(tok.substr(0, star));
      } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(e.what()) + " in term '" + tok + "'", line.number);
      }
      name = tok.substr(star + 1);
    } else if (!tok.empty() && tok[0] == '-') {
      coef = -1;
      name = tok.substr(1);
    }
    auto it = vars.find(name);
    if (it == vars.end()) throw ParseError("unknown variable '" + name + "'", line.number);
    row[it->second] += coef;
  }
  return row;
}

void write_terms(std::ostream& out, const ZeroOneLP& lp, const RatVector& coefs) {
  for (std::size_t j = 0; j < coefs.size(); ++j)
    if (sgn(coefs[j]) != 0) out << ' ' << to_string(coefs[j]) << '*' << lp.names[j];
}

bool has_box_suffix(const ZeroOneLP& lp) {
  const std::size_t n = lp.num_vars(), m = lp.num_rows();
  if (m < 2 * n) return false;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t r = m - 2 * n + 2 * j;
    for (std::size_t k = 0; k < n; ++k) {
      if (lp.a(r, k) != (k == j ? 1 : 0)) return false;
      if (lp.a(r + 1, k) != (k == j ? -1 : 0)) return false;
    }
    if (lp.b[r] != 0 || lp.b[r + 1] != -1) return false;
  }
  return true;
}

}  // namespace

ZeroOneLP parse_lp(std::istream& in) {
  auto lines = read_lines(in, '#');
  ZeroOneLP lp;
  std::map<std::string, std::size_t> vars;
  std::vector<RatVector> rows;
  RatVector b;
  std::optional<RatVector> obj;
  bool box = false;
  bool rows_started = false;
  for (const auto& line : lines) {
    const std::string& key = line.tokens[0];
    if (key == "var") {
      if (rows_started) throw ParseError("'var' after rows or objective", line.number);
      expect_fields(line, 2);
      if (line.tokens[1].find('*') != std::string::npos) throw ParseError("variable names must not contain '*'", line.number);
      if (!vars.emplace(line.tokens[1], lp.names.size()).second)
        throw ParseError("variable '" + line.tokens[1] + "' declared twice", line.number);
      lp.names.push_back(line.tokens[1]);
    } else if (key == "row") {
      rows_started = true;
      if (line.tokens.size() < 3) throw ParseError("'row' needs a relation and a right-hand side", line.number);
      const std::string& rel = line.tokens[1];
      Rational rhs = rational_at(line, 2);
      RatVector r = parse_terms(line, 3, vars);
      if (rel == ">=" || rel == "=") {
        rows.push_back(r);
        b.push_back(rhs);
      }
      if (rel == "<=" || rel == "=") {
        for (auto& x : r) x = -x;
        rows.push_back(r);
        b.push_back(-rhs);
      }
      if (rel != ">=" && rel != "<=" && rel != "=") throw ParseError("unknown relation '" + rel + "'", line.number);
    } else if (key == "obj") {
      rows_started = true;
      if (obj) throw ParseError("objective given twice", line.number);
      obj = parse_terms(line, 1, vars);
    } else if (key == "box") {
      rows_started = true;
      expect_fields(line, 1);
      box = true;
    } else {
      throw ParseError("unknown directive '" + key + "'", line.number);
    }
  }
  lp.c = obj ? *obj : RatVector(lp.names.size());
  lp.a = RatMatrix(rows.size(), lp.names.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < lp.names.size(); ++j) lp.a(i, j) = rows[i][j];
  lp.b = b;
  if (box) append_box_rows(lp);
  return lp;
}

void write_lp(std::ostream& out, const ZeroOneLP& lp) {
  lp.validate();
  for (const auto& n : lp.names) {
    check_name(n);
    require(n.find('*') == std::string::npos, "variable names must not contain '*'");
  }
  for (const auto& n : lp.names) out << "var " << n << '\n';
  const bool box = has_box_suffix(lp);
  const std::size_t explicit_rows = box ? lp.num_rows() - 2 * lp.num_vars() : lp.num_rows();
  for (std::size_t i = 0; i < explicit_rows; ++i) {
    out << "row >= " << to_string(lp.b[i]);
    write_terms(out, lp, lp.a.row(i));
    out << '\n';
  }
  out << "obj";
  write_terms(out, lp, lp.c);
  out << '\n';
  if (box) out << "box\n";
}

// ---------------------------------------------------------------------------
// .sdp

InequalitySDP parse_sdp(std::istream& in) {
  auto lines = read_lines(in, '#');
  InequalitySDP sdp;
  bool have_blocks = false, have_vars = false, have_obj = false;
  auto entry = [&](const Line& line, std::size_t from) {
    SymEntry e{index_at(line, from), index_at(line, from + 1), index_at(line, from + 2), rational_at(line, from + 3)};
    if (e.block >= sdp.block_sizes.size()) throw ParseError("block index out of range", line.number);
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.j >= sdp.block_sizes[e.block]) throw ParseError("entry index out of range for its block", line.number);
    return e;
  };
  for (const auto& line : lines) {
    const std::string& key = line.tokens[0];
    if (key == "blocks") {
      if (have_blocks) throw ParseError("blocks declared twice", line.number);
      for (std::size_t k = 1; k < line.tokens.size(); ++k) {
        std::size_t s = index_at(line, k);
        if (s == 0) throw ParseError("block sizes must be positive", line.number);
        sdp.block_sizes.push_back(s);
      }
      have_blocks = true;
    } else if (key == "vars") {
      expect_fields(line, 2);
      if (have_vars) throw ParseError("vars declared twice", line.number);
      sdp.coefficients.resize(index_at(line, 1));
      sdp.objective.assign(sdp.coefficients.size(), 0);
      have_vars = true;
    } else if (key == "obj") {
      if (!have_vars) throw ParseError("'obj' before 'vars'", line.number);
      if (have_obj) throw ParseError("objective given twice", line.number);
      expect_fields(line, sdp.num_vars() + 1);
      for (std::size_t v = 0; v < sdp.num_vars(); ++v) sdp.objective[v] = rational_at(line, v + 1);
      have_obj = true;
    } else if (key == "const") {
      if (!have_blocks) throw ParseError("'const' before 'blocks'", line.number);
      expect_fields(line, 5);
      sdp.constant.push_back(entry(line, 1));
    } else if (key == "coef") {
      if (!have_blocks || !have_vars) throw ParseError("'coef' before 'blocks' and 'vars'", line.number);
      expect_fields(line, 6);
      std::size_t v = index_at(line, 1);
      if (v >= sdp.num_vars()) throw ParseError("variable index out of range", line.number);
      sdp.coefficients[v].push_back(entry(line, 2));
    } else {
      throw ParseError("unknown directive '" + key + "'", line.number);
    }
  }
  if (!have_blocks) throw ParseError("missing 'blocks' line", last_line(lines));
  validated([&] { sdp.validate(); }, last_line(lines));
  return sdp;
}

void write_sdp(std::ostream& out, const InequalitySDP& sdp) {
  sdp.validate();
  out << "blocks";
  for (auto s : sdp.block_sizes) out << ' ' << s;
  out << "\nvars " << sdp.num_vars() << "\nobj";
  for (const auto& c : sdp.objective) out << ' ' << to_string(c);
  out << '\n';
  for (const auto& e : sdp.constant)
    out << "const " << e.block << ' ' << e.i << ' ' << e.j << ' ' << to_string(e.value) << '\n';
  for (std::size_t v = 0; v < sdp.num_vars(); ++v)
    for (const auto& e : sdp.coefficients[v])
      out << "coef " << v << ' ' << e.block << ' ' << e.i << ' ' << e.j << ' ' << to_string(e.value) << '\n';
}

// ---------------------------------------------------------------------------
// .3lin and .cnf

namespace {

// "p <kind> <a> <b>" header.
std::pair<std::size_t, std::size_t> problem_line(const std::vector<Line>& lines, const char* kind) {
  if (lines.empty() || lines[0].tokens[0] != "p") throw ParseError(std::string("missing 'p ") + kind + "' header", 1);
  const Line& h = lines[0];
  expect_fields(h, 4);
  if (h.tokens[1] != kind) throw ParseError("expected format '" + std::string(kind) + "', got '" + h.tokens[1] + "'", h.number);
  return {index_at(h, 2), index_at(h, 3)};
}

}  // namespace

LinSystem parse_3lin(std::istream& in) {
  auto lines = read_lines(in, '#');
  auto [n, m] = problem_line(lines, "3lin");
  LinSystem sys;
  sys.num_vars = n;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    expect_fields(line, 4);
    LinEquation e;
    for (std::size_t i = 0; i < 3; ++i) {
      std::size_t v = index_at(line, i);
      if (v == 0 || v > n) throw ParseError("variable out of range 1.." + std::to_string(n), line.number);
      e.vars[i] = v - 1;
    }
    std::size_t rhs = index_at(line, 3);
    if (rhs > 1) throw ParseError("right-hand side must be 0 or 1", line.number);
    e.rhs = rhs == 1;
    validated([&] { LinSystem probe{n, {e}}; probe.validate(); }, line.number);
    sys.equations.push_back(e);
  }
  if (sys.equations.size() != m)
    throw ParseError("header promises " + std::to_string(m) + " equations, found " + std::to_string(sys.equations.size()),
                     last_line(lines));
  return sys;
}

void write_3lin(std::ostream& out, const LinSystem& system) {
  system.validate();
  out << "p 3lin " << system.num_vars << ' ' << system.equations.size() << '\n';
  for (const auto& e : system.equations)
    out << e.vars[0] + 1 << ' ' << e.vars[1] + 1 << ' ' << e.vars[2] + 1 << ' ' << (e.rhs ? 1 : 0) << '\n';
}

CnfFormula parse_cnf(std::istream& in) {
  auto lines = read_lines(in, 'c');
  auto [n, m] = problem_line(lines, "cnf");
  CnfFormula f;
  f.num_vars = n;
  std::vector<int> current;
  std::size_t current_line = 0;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    for (std::size_t t = 0; t < line.tokens.size(); ++t) {
      Integer z = integer_at(line, t);
      if (!z.fits_sint_p()) throw ParseError("literal out of range", line.number);
      int lit = static_cast<int>(z.get_si());
      if (current.empty()) current_line = line.number;
      if (lit != 0) {
        if (static_cast<std::size_t>(std::abs(lit)) > n) throw ParseError("literal exceeds the declared variables", line.number);
        current.push_back(lit);
        continue;
      }
      if (current.size() != 3) throw ParseError("clauses must have exactly 3 literals", current_line);
      Clause c{current[0], current[1], current[2]};
      validated([&] { CnfFormula probe{n, {c}}; probe.validate(); }, current_line);
      f.clauses.push_back(c);
      current.clear();
    }
  }
  if (!current.empty()) throw ParseError("clause not terminated by 0", current_line);
  if (f.clauses.size() != m)
    throw ParseError("header promises " + std::to_string(m) + " clauses, found " + std::to_string(f.clauses.size()),
                     last_line(lines));
  return f;
}

void write_cnf(std::ostream& out, const CnfFormula& formula) {
  formula.validate();
  out << "p cnf " << formula.num_vars << ' ' << formula.clauses.size() << '\n';
  for (const auto& c : formula.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
}

// ---------------------------------------------------------------------------
// .graph

WeightedGraph parse_graph(std::istream& in) {
  auto lines = read_lines(in, '#');
  if (lines.empty() || lines[0].tokens[0] != "vertices") throw ParseError("missing 'vertices' header", 1);
  expect_fields(lines[0], 2);
  WeightedGraph g;
  g.vertices = index_at(lines[0], 1);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.tokens[0] != "edge") throw ParseError("unknown directive '" + line.tokens[0] + "'", line.number);
    expect_fields(line, 4);
    std::size_t u = index_at(line, 1), v = index_at(line, 2);
    Integer w = integer_at(line, 3);
    if (u >= g.vertices || v >= g.vertices) throw ParseError("vertex out of range", line.number);
    if (w < 0) throw ParseError("weights must be nonnegative", line.number);
    validated([&] { g.add_edge(u, v, w); }, line.number);
  }
  return g;
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
  g.validate();
  out << "vertices " << g.vertices << '\n';
  for (const auto& e : g.edges) out << "edge " << e.u << ' ' << e.v << ' ' << e.weight << '\n';
}

// ---------------------------------------------------------------------------
// .sol

SolutionRecord parse_sol(std::istream& in) {
  auto lines = read_lines(in, '#');
  SolutionRecord s;
  bool have_status = false;
  for (const auto& line : lines) {
    const std::string& key = line.tokens[0];
    if (key == "status") {
      expect_fields(line, 2);
      if (line.tokens[1] == "optimal")
        s.status = SolveStatus::kOptimal;
      else if (line.tokens[1] == "empty")
        s.status = SolveStatus::kEmpty;
      else
        throw ParseError("unknown status '" + line.tokens[1] + "'", line.number);
      have_status = true;
    } else if (key == "value") {
      expect_fields(line, 2);
      s.value = rational_at(line, 1);
    } else if (key == "rounded") {
      expect_fields(line, 2);
      s.rounded = integer_at(line, 1);
    } else if (key == "delta") {
      expect_fields(line, 2);
      s.delta = rational_at(line, 1);
    } else if (key == "shift") {
      expect_fields(line, 2);
      s.shift = rational_at(line, 1);
    } else if (key == "tolerance") {
      expect_fields(line, 2);
      s.tolerance = rational_at(line, 1);
    } else if (key == "iterations" || key == "budget") {
      expect_fields(line, 2);
      Integer z = integer_at(line, 1);
      if (z < 0 || !z.fits_ulong_p()) throw ParseError("count out of range", line.number);
      (key == "iterations" ? s.iterations : s.budget) = z.get_ui();
    } else if (key == "point") {
      s.point.clear();
      for (std::size_t k = 1; k < line.tokens.size(); ++k) s.point.push_back(rational_at(line, k));
    } else {
      throw ParseError("unknown directive '" + key + "'", line.number);
    }
  }
  if (!have_status) throw ParseError("missing 'status' line", last_line(lines));
  return s;
}

void write_sol(std::ostream& out, const SolutionRecord& s) {
  out << "status " << (s.status == SolveStatus::kOptimal ? "optimal" : "empty") << '\n';
  out << "value " << to_string(s.value) << '\n';
  if (s.rounded) out << "rounded " << *s.rounded << '\n';
  out << "delta " << to_string(s.delta) << '\n';
  out << "shift " << to_string(s.shift) << '\n';
  out << "tolerance " << to_string(s.tolerance) << '\n';
  out << "iterations " << s.iterations << '\n';
  out << "budget " << s.budget << '\n';
  out << "point";
  for (const auto& x : s.point) out << ' ' << to_string(x);
  out << '\n';
}

// ---------------------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace lascap
