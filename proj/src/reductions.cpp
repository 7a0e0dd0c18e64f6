#include "lascap/reductions.hpp"

#include <cstdlib>
#include <map>

#include "lascap/errors.hpp"

namespace lascap {

void LinSystem::validate() const {
  for (const auto& e : equations) {
    for (auto v : e.vars) require(v < num_vars, "LinSystem: variable out of range");
    require(e.vars[0] != e.vars[1] && e.vars[0] != e.vars[2] && e.vars[1] != e.vars[2],
            "LinSystem: equation repeats a variable");
  }
}

void CnfFormula::validate() const {
  for (const auto& c : clauses) {
    for (int l : c) require(l != 0 && static_cast<std::size_t>(std::abs(l)) <= num_vars, "CnfFormula: literal out of range");
    require(std::abs(c[0]) != std::abs(c[1]) && std::abs(c[0]) != std::abs(c[2]) && std::abs(c[1]) != std::abs(c[2]),
            "CnfFormula: clause repeats a variable");
  }
}

CnfFormula threelin_to_threesat(const LinSystem& system) {
  system.validate();
  CnfFormula f;
  f.num_vars = system.num_vars;
  for (const auto& e : system.equations) {
    const int a = static_cast<int>(e.vars[0]) + 1;
    const int b = static_cast<int>(e.vars[1]) + 1;
    const int c = static_cast<int>(e.vars[2]) + 1;
    if (!e.rhs) {
      f.clauses.push_back({a, b, c});
      f.clauses.push_back({-a, -b, c});
      f.clauses.push_back({a, -b, -c});
      f.clauses.push_back({-a, b, -c});
    } else {
      f.clauses.push_back({-a, b, c});
      f.clauses.push_back({a, -b, c});
      f.clauses.push_back({a, b, -c});
      f.clauses.push_back({-a, -b, -c});
    }
  }
  return f;
}

GadgetResult threesat_to_maxcut(const CnfFormula& formula) {
  formula.validate();
  GadgetResult out;
  const std::size_t m = formula.clauses.size();
  if (m == 0) return out;
  const Integer big = Integer(static_cast<unsigned long>(4 * m + 1));

  WeightedGraph& g = out.graph;
  g.vertices = 1;  // reference vertex F
  std::map<std::size_t, std::size_t> positive;  // variable -> vertex of x_v
  for (const auto& c : formula.clauses)
    for (int l : c) {
      std::size_t v = static_cast<std::size_t>(std::abs(l)) - 1;
      if (positive.emplace(v, g.vertices).second) g.vertices += 2;
    }
  auto literal = [&](int l) {
    std::size_t x = positive.at(static_cast<std::size_t>(std::abs(l)) - 1);
    return l > 0 ? x : x + 1;
  };
  for (const auto& [v, x] : positive) g.add_edge(x, x + 1, big);

  for (const auto& c : formula.clauses) {
    const std::size_t z = g.vertices;
    g.vertices += 2;
    g.add_edge(z, z + 1, big);
    const std::size_t l1 = literal(c[0]), l2 = literal(c[1]), l3 = literal(c[2]);
    for (auto [p, q] : {std::pair{l1, l2}, {l2, z}, {z, l1}, {z + 1, l3}, {l3, std::size_t{0}}, {std::size_t{0}, z + 1}})
      g.add_edge(p, q, 1);
  }
  out.threshold = big * Integer(static_cast<unsigned long>(positive.size() + m)) +
                  Integer(static_cast<unsigned long>(4 * m));
  return out;
}

namespace {

void check_size(std::size_t n) {
  if (n > kBruteSatMaxVars) throw TooLarge("instance too large for oracle: " + std::to_string(n) + " variables");
}

}  // namespace

bool brute_sat(const CnfFormula& formula) {
  formula.validate();
  check_size(formula.num_vars);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << formula.num_vars); ++mask) {
    bool all = true;
    for (const auto& c : formula.clauses) {
      bool any = false;
      for (int l : c) {
        bool value = (mask >> (std::abs(l) - 1)) & 1;
        if (value == (l > 0)) any = true;
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool brute_lin(const LinSystem& system) {
  system.validate();
  check_size(system.num_vars);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << system.num_vars); ++mask) {
    bool all = true;
    for (const auto& e : system.equations) {
      bool parity = ((mask >> e.vars[0]) ^ (mask >> e.vars[1]) ^ (mask >> e.vars[2])) & 1;
      if (parity != e.rhs) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

std::string clause_to_string(const Clause& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < 3; ++i) {
    if (i) s += " v ";
    if (c[i] < 0) s += "~";
    s += "x" + std::to_string(std::abs(c[i]));
  }
  return s + ")";
}

}  // namespace lascap
