#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfl/dyadic.hpp"

namespace cfl {

/// Modulus of uniform continuity as a finite dyadic staircase. A query at
/// epsilon returns the delta of the smallest breakpoint >= epsilon (the
/// largest breakpoint when epsilon exceeds them all).
class Modulus {
 public:
  Modulus() : steps_{{Dyadic::one(), Dyadic::one()}} {}
  explicit Modulus(std::vector<std::pair<Dyadic, Dyadic>> steps);

  Dyadic delta(const Dyadic& epsilon) const;
  const std::vector<std::pair<Dyadic, Dyadic>>& breakpoints() const { return steps_; }

 private:
  std::vector<std::pair<Dyadic, Dyadic>> steps_;  // sorted by epsilon
};

/// A continuous signature: relation and function symbols with arities and a
/// per-argument modulus, plus the distinguished binary relation d.
class Signature {
 public:
  struct Symbol {
    std::string name;
    unsigned arity = 0;
    std::vector<Modulus> moduli;  // one per argument index
  };

  static constexpr const char* kMetric = "d";

  Signature() = default;

  void add_relation(std::string name, unsigned arity, std::vector<Modulus> moduli = {});
  void add_function(std::string name, unsigned arity, std::vector<Modulus> moduli = {});

  const std::vector<Symbol>& relations() const { return rels_; }
  const std::vector<Symbol>& functions() const { return fns_; }
  const Symbol* relation(const std::string& name) const;
  const Symbol* function(const std::string& name) const;
  bool has_symbol(const std::string& name) const;

  /// Index of a symbol in its own list; used by the sentence enumerator for
  /// weight accounting.
  std::optional<size_t> relation_index(const std::string& name) const;
  std::optional<size_t> function_index(const std::string& name) const;

  /// Checks the structural invariants: disjoint symbol sets, nonempty
  /// relations, d present with arity 2, moduli arity-complete.
  void validate() const;

 private:
  std::vector<Symbol> rels_;
  std::vector<Symbol> fns_;
};

/// The minimal signature {d} shared by several tests and tools.
Signature metric_only_signature();

}  // namespace cfl
