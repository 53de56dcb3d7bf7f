#include "cfl/diagram.hpp"

#include "cfl/enumerate.hpp"
#include "cfl/errors.hpp"

namespace cfl {

WeakStructure with_element_names(const WeakStructure& m) {
  Signature sig = m.signature();
  for (const auto& e : m.universe()) sig.add_function(e, 0);
  WeakStructure out(sig, m.universe());
  for (const auto& s : m.signature().functions()) {
    // copy tables tuple by tuple
    std::vector<size_t> cur(s.arity, 0);
    size_t total = 1;
    for (unsigned i = 0; i < s.arity; ++i) total *= m.size();
    for (size_t t = 0; t < total; ++t) {
      out.set_function(s.name, cur, m.apply(s.name, cur));
      for (size_t i = s.arity; i-- > 0;) {
        if (++cur[i] < m.size()) break;
        cur[i] = 0;
      }
    }
  }
  for (const auto& s : m.signature().relations()) {
    if (!m.relation_exact(s.name))
      throw DomainError("diagram enumeration needs exact dyadic relations (" + s.name + ")");
    std::vector<size_t> cur(s.arity, 0);
    size_t total = 1;
    for (unsigned i = 0; i < s.arity; ++i) total *= m.size();
    for (size_t t = 0; t < total; ++t) {
      out.set_relation(s.name, cur, m.rel(s.name, cur));
      for (size_t i = s.arity; i-- > 0;) {
        if (++cur[i] < m.size()) break;
        cur[i] = 0;
      }
    }
  }
  for (size_t e = 0; e < m.size(); ++e) out.set_function(m.universe()[e], {}, e);
  return out;
}

namespace {

std::vector<std::pair<Formula, Dyadic>> diagram(const WeakStructure& m, unsigned stage,
                                                bool quantifier_free) {
  WeakStructure named = with_element_names(m);
  std::vector<std::pair<Formula, Dyadic>> out;
  for (Formula& f : enumerate_formulas(named.signature(), stage, quantifier_free, true)) {
    Dyadic v = exact_value(named, f);
    out.emplace_back(std::move(f), std::move(v));
  }
  return out;
}

}  // namespace

std::vector<std::pair<Formula, Dyadic>> atomic_diagram(const WeakStructure& m, unsigned stage) {
  return diagram(m, stage, true);
}

std::vector<std::pair<Formula, Dyadic>> elementary_diagram(const WeakStructure& m,
                                                           unsigned stage) {
  return diagram(m, stage, false);
}

}  // namespace cfl
