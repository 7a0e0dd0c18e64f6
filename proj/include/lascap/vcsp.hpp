#pragma once

// Finite-valued CSP instances and the exhaustive optimum oracle.

#include <cstdint>
#include <string>
#include <vector>

#include "lascap/rational.hpp"

namespace lascap {

struct Domain {
  std::vector<std::string> labels;

  std::size_t size() const { return labels.size(); }
  // Index of `label`, or size() when absent.
  std::size_t find(const std::string& label) const;
};

// f: D^arity -> nonnegative integers. Tuples are indexed in mixed radix with
// the first coordinate most significant.
struct ValuedFunction {
  std::string name;
  std::size_t arity = 1;
  std::vector<Integer> table;

  const Integer& operator()(const std::vector<std::size_t>& tuple, std::size_t domain_size) const;
};

struct Constraint {
  std::size_t function = 0;  // index into VcspInstance::functions
  Integer weight = 1;
  std::vector<std::size_t> scope;  // variable indices
};

using Assignment = std::vector<std::size_t>;  // variable index -> domain index

struct VcspInstance {
  Domain domain;
  std::vector<std::string> variables;
  std::vector<ValuedFunction> functions;
  std::vector<Constraint> constraints;

  // Throws ContractViolation unless every invariant holds: nonempty domain
  // with distinct labels, total nonnegative tables, scopes matching arities.
  void validate() const;
  std::size_t add_function(ValuedFunction f);
  void add_constraint(std::size_t function, Integer weight, std::vector<std::size_t> scope);
};

std::size_t tuple_count(std::size_t domain_size, std::size_t arity);
std::size_t encode_tuple(const std::vector<std::size_t>& tuple, std::size_t domain_size);
std::vector<std::size_t> decode_tuple(std::size_t index, std::size_t domain_size, std::size_t arity);

// Val_I(h) = sum over constraints of w * f(h(scope)).
Integer evaluate(const VcspInstance& inst, const Assignment& h);

struct OptResult {
  Integer value;
  Assignment argmax;
};

inline constexpr std::uint64_t kDefaultBruteForceCap = std::uint64_t{1} << 20;

// Opt(I) by enumerating D^V; argmax is the lexicographically first maximizer
// (variable 0 most significant). Throws TooLarge when |D|^|V| > cap.
OptResult brute_force_opt(const VcspInstance& inst, std::uint64_t cap = kDefaultBruteForceCap);

}  // namespace lascap
