#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "cfl/eval.hpp"
#include "cfl/formula.hpp"
#include "cfl/signature.hpp"

namespace cfl {

/// Values for the propositional symbols S0 (0-ary relation atoms).
using TruthAssignment = std::map<std::string, Dyadic>;

/// Unique extension of a symbol assignment to all propositional formulas
/// (no quantifiers, no terms). Throws DomainError on a missing symbol or a
/// non-propositional formula.
Dyadic propositional_value(const Formula& f, const TruthAssignment& v0);

enum class Schema {
  A1, A2, A3, A4, A5, A6,        // Lukasiewicz / continuous propositional
  A7, A8, A9,                    // quantifiers
  A10, A11, A12,                 // pseudo-metric
  A13, A14,                      // uniform continuity
  Custom,                        // harness negative controls
};

std::string schema_name(Schema s);

struct AxiomInstance {
  Schema schema;
  std::string label;  // instantiation summary for reports
  Formula formula;
};

/// A1-A6 over ordered tuples from the pool.
std::vector<AxiomInstance> instantiate_propositional(Schema s, std::span<const Formula> pool);

/// A7 (pairs x var), A8 (formula x term x var, capture-violating pairs
/// skipped), A9 (formula x var not free).
std::vector<AxiomInstance> instantiate_quantifier(Schema s, std::span<const Formula> pool,
                                                  std::span<const std::string> vars,
                                                  std::span<const Term> terms = {});

/// A10-A12 with canonical variables.
std::vector<AxiomInstance> instantiate_metric(Schema s);

/// A13 (functions) / A14 (relations): one instance per symbol, argument
/// index, modulus breakpoint epsilon, and (r, q) from the dyadic grid at
/// `grid_exponent` with r > epsilon and 0 < q < delta(epsilon).
std::vector<AxiomInstance> instantiate_continuity(Schema s, const Signature& sig,
                                                  unsigned grid_exponent);

struct ValidityReport {
  std::string schema;
  size_t instances = 0;
  size_t evaluations = 0;
  Dyadic max_value;
  std::string worst;  // instance label attaining the max
};

/// Exhaustive dyadic-grid check for propositional instances: every atom of
/// each instance ranges over the full exponent-`exponent` grid. A sound
/// schema reports max 0.
ValidityReport check_validity_grid(std::span<const AxiomInstance> instances, unsigned exponent);

/// Structural check: max over all structures and all assignments of the
/// instance's free variables.
ValidityReport check_validity_structures(std::span<const AxiomInstance> instances,
                                         std::span<const WeakStructure> structures);

}  // namespace cfl
