#include "cfl/eval.hpp"

#include "cfl/errors.hpp"

namespace cfl {

namespace {

size_t count_atoms(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atomic:
      return 1;
    case FormulaKind::Const:
      return 0;
    case FormulaKind::TruncSub:
      return count_atoms(f.left()) + count_atoms(f.right());
    default:
      return count_atoms(f.body());
  }
}

unsigned ceil_log2(size_t n) {
  unsigned b = 0;
  size_t v = 1;
  while (v < n) {
    v <<= 1;
    ++b;
  }
  return b;
}

struct ExactEval {
  const WeakStructure& m;
  Assignment sigma;

  Dyadic value(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Atomic: {
        std::vector<size_t> args;
        args.reserve(f.args().size());
        for (const Term& t : f.args()) args.push_back(eval_term(m, t, sigma));
        return m.rel(f.relation(), args);
      }
      case FormulaKind::Const:
        return f.value();
      case FormulaKind::TruncSub:
        return value(f.left()).trunc_sub(value(f.right()));
      case FormulaKind::Neg:
        return value(f.body()).negate();
      case FormulaKind::Half:
        return value(f.body()).halve();
      case FormulaKind::Sup: {
        Dyadic best;
        auto saved = shadow(f.bound_var());
        for (size_t e = 0; e < m.size(); ++e) {
          sigma[f.bound_var()] = e;
          best = max(best, value(f.body()));
          if (best.is_one()) break;
        }
        unshadow(f.bound_var(), saved);
        return best;
      }
    }
    throw Error("unreachable formula kind");
  }

  std::optional<size_t> shadow(const std::string& var) {
    auto it = sigma.find(var);
    if (it == sigma.end()) return std::nullopt;
    return it->second;
  }
  void unshadow(const std::string& var, const std::optional<size_t>& saved) {
    if (saved)
      sigma[var] = *saved;
    else
      sigma.erase(var);
  }
};

struct IntervalEval {
  const WeakStructure& m;
  Assignment sigma;
  unsigned atom_precision;
  bool open_universe;  // the structure is a stage prefix of a countable one
  bool exact = true;

  DyadicInterval value(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Atomic: {
        std::vector<size_t> args;
        args.reserve(f.args().size());
        for (const Term& t : f.args()) args.push_back(eval_term(m, t, sigma));
        return m.rel_interval(f.relation(), args, atom_precision);
      }
      case FormulaKind::Const:
        return DyadicInterval(f.value());
      case FormulaKind::TruncSub: {
        DyadicInterval l = value(f.left());
        return l.trunc_sub(value(f.right()));
      }
      case FormulaKind::Neg:
        return value(f.body()).negate();
      case FormulaKind::Half:
        return value(f.body()).halve();
      case FormulaKind::Sup: {
        size_t limit = m.size();
        bool truncated = false;
        if (open_universe) {
          // A declared witness prefix the stage has reached keeps the sup exact.
          if (m.witness_prefix() && *m.witness_prefix() <= limit)
            limit = std::max<size_t>(*m.witness_prefix(), 1);
          else
            truncated = true;
        }
        DyadicInterval best(Dyadic::zero());
        auto it = sigma.find(f.bound_var());
        std::optional<size_t> saved =
            it == sigma.end() ? std::nullopt : std::optional<size_t>(it->second);
        for (size_t e = 0; e < limit; ++e) {
          sigma[f.bound_var()] = e;
          best = best.max_with(value(f.body()));
        }
        if (saved)
          sigma[f.bound_var()] = *saved;
        else
          sigma.erase(f.bound_var());
        if (truncated) {
          exact = false;
          return DyadicInterval(best.lo(), Dyadic::one());
        }
        return best;
      }
    }
    throw Error("unreachable formula kind");
  }
};

}  // namespace

size_t eval_term(const WeakStructure& m, const Term& t, const Assignment& sigma) {
  if (t.is_var()) {
    auto it = sigma.find(t.symbol());
    if (it == sigma.end()) throw UnboundVariable("unbound variable: " + t.symbol());
    return it->second;
  }
  std::vector<size_t> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(eval_term(m, a, sigma));
  return m.apply(t.symbol(), args);
}

Dyadic exact_value(const WeakStructure& m, const Formula& f, const Assignment& sigma) {
  ExactEval ev{m, sigma};
  return ev.value(f);
}

namespace {

bool zero_rec(const WeakStructure& m, const Formula& f, Assignment& sigma) {
  switch (f.kind()) {
    case FormulaKind::Atomic:
    case FormulaKind::Const:
      return exact_value(m, f, sigma).is_zero();
    case FormulaKind::TruncSub:
      return exact_value(m, f.left(), sigma) <= exact_value(m, f.right(), sigma);
    case FormulaKind::Neg:
      return exact_value(m, f.body(), sigma).is_one();
    case FormulaKind::Half:
      return zero_rec(m, f.body(), sigma);
    case FormulaKind::Sup: {
      auto it = sigma.find(f.bound_var());
      std::optional<size_t> saved =
          it == sigma.end() ? std::nullopt : std::optional<size_t>(it->second);
      bool all_zero = true;
      for (size_t e = 0; e < m.size() && all_zero; ++e) {
        sigma[f.bound_var()] = e;
        all_zero = zero_rec(m, f.body(), sigma);
      }
      if (saved)
        sigma[f.bound_var()] = *saved;
      else
        sigma.erase(f.bound_var());
      return all_zero;
    }
  }
  throw Error("unreachable formula kind");
}

}  // namespace

bool zero_value(const WeakStructure& m, const Formula& f, const Assignment& sigma) {
  Assignment s = sigma;
  return zero_rec(m, f, s);
}

EvalResult eval(const WeakStructure& m, const Formula& f, const Assignment& sigma,
                unsigned precision) {
  IntervalEval ev{m, sigma, precision + ceil_log2(std::max<size_t>(count_atoms(f), 1)) + 1,
                  false};
  DyadicInterval iv = ev.value(f);
  return {iv, ev.exact};
}

EvalResult eval_staged(EnumeratedStructure& m, const Formula& f, unsigned precision,
                       unsigned stage) {
  const WeakStructure& pre = m.prefix(stage);
  IntervalEval ev{pre, {}, precision + ceil_log2(std::max<size_t>(count_atoms(f), 1)) + 1, true};
  DyadicInterval iv = ev.value(f);
  return {iv, ev.exact};
}

// The interval always encloses the true value (a truncated sup widens it to
// [lo, 1]), so both decided verdicts below are sound.
SatReport satisfies(const WeakStructure& m, const Assignment& sigma, const Formula& f,
                    unsigned precision) {
  EvalResult r = eval(m, f, sigma, precision);
  if (r.interval.hi().is_zero()) return {SatReport::Verdict::Satisfied, r.interval};
  if (r.interval.lo() > Dyadic::zero()) return {SatReport::Verdict::NotSatisfied, r.interval};
  return {SatReport::Verdict::Undecided, r.interval};
}

}  // namespace cfl
