#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cfl/dyadic.hpp"

namespace cfl {

/// First-order term: a variable or a function application (constants are
/// 0-ary applications).
class Term {
 public:
  static Term var(std::string name);
  static Term app(std::string symbol, std::vector<Term> args = {});
  static Term constant(std::string symbol) { return app(std::move(symbol)); }

  bool is_var() const { return is_var_; }
  const std::string& symbol() const { return symbol_; }
  const std::vector<Term>& args() const { return args_; }

  void collect_vars(std::set<std::string>& out) const;
  void collect_symbols(std::set<std::string>& out) const;
  Term substitute(const Term& replacement, const std::string& var) const;

  bool operator==(const Term& b) const;
  std::string str() const;

 private:
  bool is_var_ = true;
  std::string symbol_;
  std::vector<Term> args_;
};

enum class FormulaKind { Atomic, Const, TruncSub, Neg, Half, Sup };

/// Formula of continuous first-order logic over the five primitives
/// P(t...), dyadic constants, truncated subtraction, negation, halving and
/// the sup quantifier. Conjunction, disjunction, |phi - psi| and inf are
/// derived constructors that expand into primitives. Nodes are immutable
/// and shared.
class Formula {
 public:
  Formula() = default;

  static Formula atomic(std::string relation, std::vector<Term> args = {});
  static Formula constant(Dyadic value);
  static Formula trunc_sub(Formula a, Formula b);
  static Formula neg(Formula a);
  static Formula half(Formula a);
  static Formula sup(std::string var, Formula body);

  // Derived connectives. `land` is a -. (a -. b), whose value is min;
  // `lor` is the de Morgan dual (max); abs_diff is (a -. b) \/ (b -. a);
  // inf x. a is ~ sup x. ~a.
  static Formula land(Formula a, Formula b);
  static Formula lor(Formula a, Formula b);
  static Formula abs_diff(Formula a, Formula b);
  static Formula inf(std::string var, Formula body);

  bool valid() const { return node_ != nullptr; }
  FormulaKind kind() const { return node_->kind; }
  const std::string& relation() const { return node_->symbol; }
  const std::vector<Term>& args() const { return node_->args; }
  const Dyadic& value() const { return node_->value; }
  Formula left() const { return Formula(node_->left); }
  Formula right() const { return Formula(node_->right); }
  Formula body() const { return Formula(node_->left); }
  const std::string& bound_var() const { return node_->symbol; }

  std::set<std::string> free_vars() const;
  bool is_sentence() const { return free_vars().empty(); }
  bool quantifier_free() const;
  /// Every relation/function symbol appearing in the formula.
  std::set<std::string> symbols() const;

  /// phi[t/x]: replaces free occurrences of x by t. Throws CaptureViolation
  /// when a variable of t would be captured by a binder (no alpha-renaming).
  Formula substitute(const Term& t, const std::string& var) const;

  bool operator==(const Formula& b) const;
  /// Canonical text form; parse() inverts it.
  std::string str() const;

 private:
  struct Node {
    FormulaKind kind;
    std::string symbol;      // relation name or bound variable
    std::vector<Term> args;  // Atomic only
    Dyadic value;            // Const only
    std::shared_ptr<const Node> left, right;
  };
  std::shared_ptr<const Node> node_;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  void free_vars_into(std::set<std::string>& acc, std::set<std::string>& bound) const;
};

}  // namespace cfl
