#pragma once

#include <vector>

#include "cfl/formula.hpp"
#include "cfl/signature.hpp"

namespace cfl {

/// Deterministic formula enumeration used for dovetailing. Formulas are
/// generated over the canonical variable pool x0, x1, ... and ranked by an
/// additive weight (node count plus symbol/variable/exponent indices), so
/// each stage's list is a prefix of the next and every pool formula appears
/// at some finite stage.
std::vector<Formula> enumerate_formulas(const Signature& sig, unsigned max_weight,
                                        bool quantifier_free = false, bool closed_only = false);

/// Closed formulas only (the sentence enumeration contract).
std::vector<Formula> enumerate_sentences(const Signature& sig, unsigned stage);

/// Godel numbering of formulas: an injective, computable, invertible coding
/// of the canonical text rendering. Decoding needs the signature to resolve
/// constants vs. variables.
BigInt godel_number(const Formula& f);
Formula godel_decode(const BigInt& code, const Signature& sig);

}  // namespace cfl
