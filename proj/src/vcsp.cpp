#include "lascap/vcsp.hpp"

#include <set>

#include "lascap/errors.hpp"

namespace lascap {

std::size_t Domain::find(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  return labels.size();
}

const Integer& ValuedFunction::operator()(const std::vector<std::size_t>& tuple, std::size_t domain_size) const {
  require(tuple.size() == arity, "ValuedFunction: tuple length differs from arity");
  return table.at(encode_tuple(tuple, domain_size));
}

std::size_t tuple_count(std::size_t domain_size, std::size_t arity) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    if (n > (std::size_t{1} << 40) / std::max<std::size_t>(domain_size, 1))
      throw TooLarge("function table too large");
    n *= domain_size;
  }
  return n;
}

std::size_t encode_tuple(const std::vector<std::size_t>& tuple, std::size_t domain_size) {
  std::size_t index = 0;
  for (auto a : tuple) {
    require(a < domain_size, "tuple entry outside the domain");
    index = index * domain_size + a;
  }
  return index;
}

std::vector<std::size_t> decode_tuple(std::size_t index, std::size_t domain_size, std::size_t arity) {
  std::vector<std::size_t> tuple(arity);
  for (std::size_t i = arity; i-- > 0;) {
    tuple[i] = index % domain_size;
    index /= domain_size;
  }
  return tuple;
}

void VcspInstance::validate() const {
  require(domain.size() >= 1, "domain must be nonempty");
  require(std::set<std::string>(domain.labels.begin(), domain.labels.end()).size() == domain.size(),
          "domain labels must be distinct");
  require(std::set<std::string>(variables.begin(), variables.end()).size() == variables.size(),
          "variable names must be distinct");
  for (const auto& f : functions) {
    require(f.arity >= 1, "function arity must be at least 1");
    require(f.table.size() == tuple_count(domain.size(), f.arity), "function table is not total");
    for (const auto& v : f.table) require(v >= 0, "function values must be nonnegative");
  }
  for (const auto& c : constraints) {
    require(c.function < functions.size(), "constraint refers to an unknown function");
    require(c.weight >= 0, "constraint weights must be nonnegative");
    require(c.scope.size() == functions[c.function].arity, "scope length differs from function arity");
    for (auto v : c.scope) require(v < variables.size(), "scope refers to an unknown variable");
  }
}

std::size_t VcspInstance::add_function(ValuedFunction f) {
  functions.push_back(std::move(f));
  return functions.size() - 1;
}

void VcspInstance::add_constraint(std::size_t function, Integer weight, std::vector<std::size_t> scope) {
  constraints.push_back({function, std::move(weight), std::move(scope)});
}

Integer evaluate(const VcspInstance& inst, const Assignment& h) {
  require(h.size() == inst.variables.size(), "assignment is not total");
  const std::size_t d = inst.domain.size();
  for (auto a : h) require(a < d, "assignment value outside the domain");
  Integer total = 0;
  for (const auto& c : inst.constraints) {
    std::size_t index = 0;
    for (auto v : c.scope) index = index * d + h[v];
    total += c.weight * inst.functions[c.function].table[index];
  }
  return total;
}

OptResult brute_force_opt(const VcspInstance& inst, std::uint64_t cap) {
  inst.validate();
  const std::size_t n = inst.variables.size();
  const std::size_t d = inst.domain.size();
  std::uint64_t states = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (states > cap / d) throw TooLarge("instance too large for oracle");
    states *= d;
  }
  if (states > cap) throw TooLarge("instance too large for oracle");

  // Odometer over D^V in lexicographic order; the first strict improvement
  // wins so ties resolve to the lexicographically first maximizer.
  Assignment h(n, 0);
  OptResult best{evaluate(inst, h), h};
  for (std::uint64_t s = 1; s < states; ++s) {
    for (std::size_t i = n; i-- > 0;) {
      if (++h[i] < d) break;
      h[i] = 0;
    }
    Integer v = evaluate(inst, h);
    if (v > best.value) best = {std::move(v), h};
  }
  return best;
}

}  // namespace lascap
