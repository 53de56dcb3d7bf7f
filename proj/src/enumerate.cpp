#include "cfl/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "cfl/errors.hpp"
#include "cfl/parser.hpp"

namespace cfl {

namespace {

std::string pool_var(unsigned i) { return "x" + std::to_string(i); }

// Splits `budget` into `parts` positive summands, invoking fn on each split.
void compositions(unsigned budget, unsigned parts, std::vector<unsigned>& acc,
                  const std::function<void(const std::vector<unsigned>&)>& fn) {
  if (parts == 0) {
    if (budget == 0) fn(acc);
    return;
  }
  if (budget < parts) return;
  for (unsigned first = 1; first + (parts - 1) <= budget; ++first) {
    acc.push_back(first);
    compositions(budget - first, parts - 1, acc, fn);
    acc.pop_back();
  }
}

class Enumerator {
 public:
  Enumerator(const Signature& sig, unsigned max_weight) : sig_(sig), max_(max_weight) {
    terms_.resize(max_ + 1);
    for (unsigned w = 1; w <= max_; ++w) build_terms(w);
  }

  std::vector<Formula> run(bool quantifier_free, bool closed_only) {
    std::vector<std::vector<Formula>> by_weight(max_ + 1);
    for (unsigned w = 1; w <= max_; ++w) by_weight[w] = build_formulas(w, quantifier_free);
    std::vector<Formula> out;
    for (unsigned w = 1; w <= max_; ++w) {
      std::vector<std::pair<std::string, Formula>> keyed;
      for (Formula& f : by_weight[w]) {
        if (closed_only && !f.is_sentence()) continue;
        keyed.emplace_back(f.str(), std::move(f));
      }
      std::sort(keyed.begin(), keyed.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [k, f] : keyed) out.push_back(std::move(f));
    }
    return out;
  }

 private:
  const Signature& sig_;
  unsigned max_;
  std::vector<std::vector<Term>> terms_;  // by exact weight

  void build_terms(unsigned w) {
    std::vector<Term>& out = terms_[w];
    out.push_back(Term::var(pool_var(w - 1)));
    const auto& fns = sig_.functions();
    for (size_t fi = 0; fi < fns.size(); ++fi) {
      if (1 + fi > w) continue;
      unsigned budget = w - 1 - static_cast<unsigned>(fi);
      if (fns[fi].arity == 0) {
        if (budget == 0) out.push_back(Term::constant(fns[fi].name));
        continue;
      }
      std::vector<unsigned> acc;
      compositions(budget, fns[fi].arity, acc, [&](const std::vector<unsigned>& split) {
        emit_apps(fns[fi].name, split, 0, {}, out);
      });
    }
  }

  void emit_apps(const std::string& sym, const std::vector<unsigned>& split, size_t at,
                 std::vector<Term> acc, std::vector<Term>& out) {
    if (at == split.size()) {
      out.push_back(Term::app(sym, std::move(acc)));
      return;
    }
    for (const Term& t : terms_[split[at]]) {
      auto next = acc;
      next.push_back(t);
      emit_apps(sym, split, at + 1, std::move(next), out);
    }
  }

  std::vector<Formula> build_formulas(unsigned w, bool quantifier_free) {
    // Memoized per (weight) across the recursion below.
    if (auto it = memo_.find({w, quantifier_free}); it != memo_.end()) return it->second;
    std::vector<Formula> out;
    // Atomic
    const auto& rels = sig_.relations();
    for (size_t ri = 0; ri < rels.size(); ++ri) {
      if (1 + ri > w) continue;
      unsigned budget = w - 1 - static_cast<unsigned>(ri);
      if (rels[ri].arity == 0) {
        if (budget == 0) out.push_back(Formula::atomic(rels[ri].name));
        continue;
      }
      std::vector<unsigned> acc;
      compositions(budget, rels[ri].arity, acc, [&](const std::vector<unsigned>& split) {
        emit_atoms(rels[ri].name, split, 0, {}, out);
      });
    }
    // Dyadic constants of this exact weight: 1 + exponent + bitlen(numerator).
    if (w == 1) out.push_back(Formula::constant(Dyadic::zero()));
    for (unsigned n = 0; n + 2 <= w; ++n) {
      unsigned b = w - 1 - n;  // bitlen of the (odd) numerator, >= 1
      BigInt lo = BigInt(1) << (b - 1);
      BigInt hi = (BigInt(1) << b) - 1;
      BigInt cap = BigInt(1) << n;
      if (lo > cap) continue;
      for (BigInt k = (lo == 1 ? BigInt(1) : lo | 1); k <= hi && k <= cap; k += 2)
        out.push_back(Formula::constant(Dyadic(k, n)));
    }
    // Connectives
    if (w >= 2) {
      for (const Formula& f : build_formulas(w - 1, quantifier_free)) {
        out.push_back(Formula::neg(f));
        out.push_back(Formula::half(f));
      }
      for (unsigned lw = 1; lw + 1 < w; ++lw) {
        unsigned rw = w - 1 - lw;
        for (const Formula& l : build_formulas(lw, quantifier_free))
          for (const Formula& r : build_formulas(rw, quantifier_free))
            out.push_back(Formula::trunc_sub(l, r));
      }
      if (!quantifier_free) {
        for (unsigned vi = 0; vi + 2 <= w; ++vi) {
          unsigned bw = w - 1 - vi;
          for (const Formula& b : build_formulas(bw, quantifier_free))
            out.push_back(Formula::sup(pool_var(vi), b));
        }
      }
    }
    memo_[{w, quantifier_free}] = out;
    return out;
  }

  void emit_atoms(const std::string& sym, const std::vector<unsigned>& split, size_t at,
                  std::vector<Term> acc, std::vector<Formula>& out) {
    if (at == split.size()) {
      out.push_back(Formula::atomic(sym, std::move(acc)));
      return;
    }
    for (const Term& t : terms_[split[at]]) {
      auto next = acc;
      next.push_back(t);
      emit_atoms(sym, split, at + 1, std::move(next), out);
    }
  }

  std::map<std::pair<unsigned, bool>, std::vector<Formula>> memo_;
};

}  // namespace

std::vector<Formula> enumerate_formulas(const Signature& sig, unsigned max_weight,
                                        bool quantifier_free, bool closed_only) {
  if (max_weight == 0) return {};
  return Enumerator(sig, max_weight).run(quantifier_free, closed_only);
}

std::vector<Formula> enumerate_sentences(const Signature& sig, unsigned stage) {
  return enumerate_formulas(sig, stage, false, true);
}

BigInt godel_number(const Formula& f) {
  std::string text = f.str();
  BigInt n = 0;
  for (auto it = text.rbegin(); it != text.rend(); ++it)
    n = n * 257 + (static_cast<unsigned char>(*it) + 1);
  return n;
}

Formula godel_decode(const BigInt& code, const Signature& sig) {
  std::string text;
  BigInt n = code;
  while (n > 0) {
    auto digit = static_cast<unsigned>(n % 257);
    if (digit == 0) throw DomainError("invalid godel code");
    text += static_cast<char>(digit - 1);
    n /= 257;
  }
  return parse(text, sig);
}

}  // namespace cfl
