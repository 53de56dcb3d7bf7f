#pragma once

#include <map>

#include "cfl/formula.hpp"
#include "cfl/structure.hpp"

namespace cfl {

/// Variable assignment into a structure's universe (by element index).
using Assignment = std::map<std::string, size_t>;

/// Interprets a term under an assignment. Throws UnboundVariable.
size_t eval_term(const WeakStructure& m, const Term& t, const Assignment& sigma);

/// Exact value of a formula on a finite structure with exact dyadic
/// relations. Quantifiers are finite sups. Throws when the structure has
/// interval-backed relations in the formula's atoms.
Dyadic exact_value(const WeakStructure& m, const Formula& f, const Assignment& sigma = {});

/// True exactly when the value is zero (the satisfaction relation). A sup
/// is zero iff every instance is, so the scan exits on the first witness of
/// a nonzero value.
bool zero_value(const WeakStructure& m, const Formula& f, const Assignment& sigma = {});

struct EvalResult {
  DyadicInterval interval;
  /// False when a sup was cut off at an open enumeration stage, in which
  /// case the interval is a one-sided enclosure only (guaranteed lower
  /// bound for sup values).
  bool exact = true;
};

/// Interval evaluation at the requested precision: atoms are queried at
/// enough extra precision that a quantifier-free formula's result has width
/// <= 2^-precision.
EvalResult eval(const WeakStructure& m, const Formula& f, const Assignment& sigma,
                unsigned precision);

/// Staged evaluation over a countable universe: quantifiers range over the
/// stage prefix, so sup values are monotone lower bounds in `stage` (exact
/// when the structure declares a witness prefix the stage has reached).
EvalResult eval_staged(EnumeratedStructure& m, const Formula& f, unsigned precision,
                       unsigned stage);

struct SatReport {
  enum class Verdict { Satisfied, NotSatisfied, Undecided } verdict;
  DyadicInterval value;
};

/// (M, sigma) |= phi exactly when the value is 0. Exact for finite exact
/// structures; otherwise decided at the requested precision when the value
/// interval separates from 0, else Undecided ("<= 2^-n so far").
SatReport satisfies(const WeakStructure& m, const Assignment& sigma, const Formula& f,
                    unsigned precision);

}  // namespace cfl
