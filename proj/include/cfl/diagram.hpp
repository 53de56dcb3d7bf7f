#pragma once

#include <utility>
#include <vector>

#include "cfl/eval.hpp"

namespace cfl {

/// Expands the signature with a 0-ary constant naming each universe element
/// and returns the matching structure (element names become the constants).
WeakStructure with_element_names(const WeakStructure& m);

/// Continuous atomic diagram: quantifier-free sentences over the
/// element-named language, paired with their exact values. Monotone in
/// `stage` (each list is a prefix of the next). Requires exact dyadic
/// relations.
std::vector<std::pair<Formula, Dyadic>> atomic_diagram(const WeakStructure& m, unsigned stage);

/// Elementary diagram: same, without the quantifier-free restriction.
std::vector<std::pair<Formula, Dyadic>> elementary_diagram(const WeakStructure& m, unsigned stage);

}  // namespace cfl
