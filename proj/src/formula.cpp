#include "cfl/formula.hpp"

#include <algorithm>

#include "cfl/errors.hpp"

namespace cfl {

Term Term::var(std::string name) {
  Term t;
  t.is_var_ = true;
  t.symbol_ = std::move(name);
  return t;
}

Term Term::app(std::string symbol, std::vector<Term> args) {
  Term t;
  t.is_var_ = false;
  t.symbol_ = std::move(symbol);
  t.args_ = std::move(args);
  return t;
}

void Term::collect_vars(std::set<std::string>& out) const {
  if (is_var_) {
    out.insert(symbol_);
    return;
  }
  for (const Term& a : args_) a.collect_vars(out);
}

void Term::collect_symbols(std::set<std::string>& out) const {
  if (is_var_) return;
  out.insert(symbol_);
  for (const Term& a : args_) a.collect_symbols(out);
}

Term Term::substitute(const Term& replacement, const std::string& var) const {
  if (is_var_) return symbol_ == var ? replacement : *this;
  std::vector<Term> args;
  args.reserve(args_.size());
  for (const Term& a : args_) args.push_back(a.substitute(replacement, var));
  return app(symbol_, std::move(args));
}

bool Term::operator==(const Term& b) const {
  return is_var_ == b.is_var_ && symbol_ == b.symbol_ && args_ == b.args_;
}

std::string Term::str() const {
  if (is_var_ || args_.empty()) return symbol_;
  std::string out = symbol_ + "(";
  for (size_t i = 0; i < args_.size(); ++i) {
    if (i > 0) out += ", ";
    out += args_[i].str();
  }
  return out + ")";
}

Formula Formula::atomic(std::string relation, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atomic;
  n->symbol = std::move(relation);
  n->args = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::constant(Dyadic value) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Const;
  n->value = std::move(value);
  return Formula(std::move(n));
}

Formula Formula::trunc_sub(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::TruncSub;
  n->left = std::move(a.node_);
  n->right = std::move(b.node_);
  return Formula(std::move(n));
}

Formula Formula::neg(Formula a) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Neg;
  n->left = std::move(a.node_);
  return Formula(std::move(n));
}

Formula Formula::half(Formula a) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Half;
  n->left = std::move(a.node_);
  return Formula(std::move(n));
}

Formula Formula::sup(std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Sup;
  n->symbol = std::move(var);
  n->left = std::move(body.node_);
  return Formula(std::move(n));
}

Formula Formula::land(Formula a, Formula b) {
  return trunc_sub(a, trunc_sub(a, std::move(b)));
}

Formula Formula::lor(Formula a, Formula b) {
  return neg(land(neg(std::move(a)), neg(std::move(b))));
}

Formula Formula::abs_diff(Formula a, Formula b) {
  return lor(trunc_sub(a, b), trunc_sub(b, a));
}

Formula Formula::inf(std::string var, Formula body) {
  return neg(sup(std::move(var), neg(std::move(body))));
}

void Formula::free_vars_into(std::set<std::string>& acc, std::set<std::string>& bound) const {
  switch (kind()) {
    case FormulaKind::Atomic: {
      std::set<std::string> vars;
      for (const Term& t : args()) t.collect_vars(vars);
      for (const auto& v : vars)
        if (!bound.count(v)) acc.insert(v);
      break;
    }
    case FormulaKind::Const:
      break;
    case FormulaKind::TruncSub:
      left().free_vars_into(acc, bound);
      right().free_vars_into(acc, bound);
      break;
    case FormulaKind::Neg:
    case FormulaKind::Half:
      body().free_vars_into(acc, bound);
      break;
    case FormulaKind::Sup: {
      bool was_bound = bound.count(bound_var()) > 0;
      bound.insert(bound_var());
      body().free_vars_into(acc, bound);
      if (!was_bound) bound.erase(bound_var());
      break;
    }
  }
}

std::set<std::string> Formula::free_vars() const {
  std::set<std::string> acc, bound;
  free_vars_into(acc, bound);
  return acc;
}

bool Formula::quantifier_free() const {
  switch (kind()) {
    case FormulaKind::Atomic:
    case FormulaKind::Const:
      return true;
    case FormulaKind::TruncSub:
      return left().quantifier_free() && right().quantifier_free();
    case FormulaKind::Neg:
    case FormulaKind::Half:
      return body().quantifier_free();
    case FormulaKind::Sup:
      return false;
  }
  return false;
}

std::set<std::string> Formula::symbols() const {
  std::set<std::string> out;
  switch (kind()) {
    case FormulaKind::Atomic:
      out.insert(relation());
      for (const Term& t : args()) t.collect_symbols(out);
      break;
    case FormulaKind::Const:
      break;
    case FormulaKind::TruncSub: {
      out = left().symbols();
      auto r = right().symbols();
      out.insert(r.begin(), r.end());
      break;
    }
    case FormulaKind::Neg:
    case FormulaKind::Half:
    case FormulaKind::Sup:
      out = body().symbols();
      break;
  }
  return out;
}

Formula Formula::substitute(const Term& t, const std::string& var) const {
  switch (kind()) {
    case FormulaKind::Atomic: {
      std::vector<Term> args;
      args.reserve(this->args().size());
      for (const Term& a : this->args()) args.push_back(a.substitute(t, var));
      return atomic(relation(), std::move(args));
    }
    case FormulaKind::Const:
      return *this;
    case FormulaKind::TruncSub:
      return trunc_sub(left().substitute(t, var), right().substitute(t, var));
    case FormulaKind::Neg:
      return neg(body().substitute(t, var));
    case FormulaKind::Half:
      return half(body().substitute(t, var));
    case FormulaKind::Sup: {
      if (bound_var() == var) return *this;
      if (!body().free_vars().count(var)) return *this;
      std::set<std::string> tvars;
      t.collect_vars(tvars);
      if (tvars.count(bound_var()))
        throw CaptureViolation("variable " + bound_var() + " of the substituted term is bound in " +
                               str());
      return sup(bound_var(), body().substitute(t, var));
    }
  }
  throw Error("unreachable formula kind");
}

bool Formula::operator==(const Formula& b) const {
  if (node_ == b.node_) return true;
  if (!node_ || !b.node_) return false;
  if (kind() != b.kind()) return false;
  switch (kind()) {
    case FormulaKind::Atomic:
      return relation() == b.relation() && args() == b.args();
    case FormulaKind::Const:
      return value() == b.value();
    case FormulaKind::TruncSub:
      return left() == b.left() && right() == b.right();
    case FormulaKind::Neg:
    case FormulaKind::Half:
      return body() == b.body();
    case FormulaKind::Sup:
      return bound_var() == b.bound_var() && body() == b.body();
  }
  return false;
}

namespace {

// Rendering precedence: binders (0) < -. (1) < unary (2) < primary (3).
int precedence(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Sup:
      return 0;
    case FormulaKind::TruncSub:
      return 1;
    case FormulaKind::Neg:
    case FormulaKind::Half:
      return 2;
    default:
      return 3;
  }
}

void render(const Formula& f, int min_prec, std::string& out) {
  bool parens = precedence(f) < min_prec;
  if (parens) out += "(";
  switch (f.kind()) {
    case FormulaKind::Atomic: {
      out += f.relation();
      if (!f.args().empty()) {
        out += "(";
        for (size_t i = 0; i < f.args().size(); ++i) {
          if (i > 0) out += ", ";
          out += f.args()[i].str();
        }
        out += ")";
      }
      break;
    }
    case FormulaKind::Const:
      out += f.value().str();
      break;
    case FormulaKind::TruncSub:
      render(f.left(), 1, out);
      out += " -. ";
      render(f.right(), 2, out);
      break;
    case FormulaKind::Neg:
      out += "~";
      render(f.body(), 2, out);
      break;
    case FormulaKind::Half:
      out += "1/2 ";
      render(f.body(), 2, out);
      break;
    case FormulaKind::Sup:
      out += "sup " + f.bound_var() + ". ";
      render(f.body(), 0, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string Formula::str() const {
  std::string out;
  render(*this, 0, out);
  return out;
}

}  // namespace cfl
