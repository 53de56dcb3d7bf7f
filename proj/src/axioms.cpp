#include "cfl/axioms.hpp"

#include <algorithm>
#include <functional>

#include "cfl/errors.hpp"

namespace cfl {

Dyadic propositional_value(const Formula& f, const TruthAssignment& v0) {
  switch (f.kind()) {
    case FormulaKind::Atomic: {
      if (!f.args().empty())
        throw DomainError("propositional evaluation hit a non-nullary atom: " + f.str());
      auto it = v0.find(f.relation());
      if (it == v0.end()) throw DomainError("no truth value for symbol " + f.relation());
      return it->second;
    }
    case FormulaKind::Const:
      return f.value();
    case FormulaKind::TruncSub:
      return propositional_value(f.left(), v0).trunc_sub(propositional_value(f.right(), v0));
    case FormulaKind::Neg:
      return propositional_value(f.body(), v0).negate();
    case FormulaKind::Half:
      return propositional_value(f.body(), v0).halve();
    case FormulaKind::Sup:
      throw DomainError("propositional evaluation hit a quantifier: " + f.str());
  }
  throw Error("unreachable formula kind");
}

std::string schema_name(Schema s) {
  switch (s) {
    case Schema::A1: return "A1";
    case Schema::A2: return "A2";
    case Schema::A3: return "A3";
    case Schema::A4: return "A4";
    case Schema::A5: return "A5";
    case Schema::A6: return "A6";
    case Schema::A7: return "A7";
    case Schema::A8: return "A8";
    case Schema::A9: return "A9";
    case Schema::A10: return "A10";
    case Schema::A11: return "A11";
    case Schema::A12: return "A12";
    case Schema::A13: return "A13";
    case Schema::A14: return "A14";
    case Schema::Custom: return "custom";
  }
  return "?";
}

namespace {

using F = Formula;

Formula schema_formula(Schema s, const Formula& phi, const Formula& psi, const Formula& chi) {
  switch (s) {
    case Schema::A1:
      return F::trunc_sub(F::trunc_sub(phi, psi), phi);
    case Schema::A2:
      return F::trunc_sub(F::trunc_sub(F::trunc_sub(chi, phi), F::trunc_sub(chi, psi)),
                          F::trunc_sub(psi, phi));
    case Schema::A3:
      return F::trunc_sub(F::trunc_sub(phi, F::trunc_sub(phi, psi)),
                          F::trunc_sub(psi, F::trunc_sub(psi, phi)));
    case Schema::A4:
      return F::trunc_sub(F::trunc_sub(phi, psi), F::trunc_sub(F::neg(psi), F::neg(phi)));
    case Schema::A5:
      return F::trunc_sub(F::half(phi), F::trunc_sub(phi, F::half(phi)));
    case Schema::A6:
      return F::trunc_sub(F::trunc_sub(phi, F::half(phi)), F::half(phi));
    default:
      throw DomainError("not a propositional schema: " + schema_name(s));
  }
}

size_t arity_of(Schema s) { return s == Schema::A2 ? 3 : 2; }

Term v(const std::string& name) { return Term::var(name); }

}  // namespace

std::vector<AxiomInstance> instantiate_propositional(Schema s, std::span<const Formula> pool) {
  if (pool.empty()) throw DomainError("instantiation needs a nonempty formula pool");
  std::vector<AxiomInstance> out;
  bool ternary = arity_of(s) == 3 && (s == Schema::A2);
  bool unary = s == Schema::A5 || s == Schema::A6;
  for (const Formula& phi : pool) {
    if (unary) {
      out.push_back({s, schema_name(s) + "[" + phi.str() + "]",
                     schema_formula(s, phi, phi, phi)});
      continue;
    }
    for (const Formula& psi : pool) {
      if (!ternary) {
        out.push_back({s, schema_name(s) + "[" + phi.str() + "; " + psi.str() + "]",
                       schema_formula(s, phi, psi, phi)});
        continue;
      }
      for (const Formula& chi : pool)
        out.push_back({s,
                       schema_name(s) + "[" + phi.str() + "; " + psi.str() + "; " + chi.str() +
                           "]",
                       schema_formula(s, phi, psi, chi)});
    }
  }
  return out;
}

std::vector<AxiomInstance> instantiate_quantifier(Schema s, std::span<const Formula> pool,
                                                  std::span<const std::string> vars,
                                                  std::span<const Term> terms) {
  if (pool.empty()) throw DomainError("instantiation needs a nonempty formula pool");
  std::vector<AxiomInstance> out;
  switch (s) {
    case Schema::A7:
      for (const Formula& psi : pool)
        for (const Formula& phi : pool)
          for (const auto& x : vars)
            out.push_back(
                {s, "A7[" + psi.str() + "; " + phi.str() + "; " + x + "]",
                 F::trunc_sub(F::trunc_sub(F::sup(x, psi), F::sup(x, phi)),
                              F::sup(x, F::trunc_sub(psi, phi)))});
      break;
    case Schema::A8:
      for (const Formula& phi : pool)
        for (const Term& t : terms)
          for (const auto& x : vars) {
            try {
              Formula inst = F::trunc_sub(phi.substitute(t, x), F::sup(x, phi));
              out.push_back({s, "A8[" + phi.str() + "; " + t.str() + "/" + x + "]", inst});
            } catch (const CaptureViolation&) {
              // the A8 side condition excludes this (t, x) pair
            }
          }
      break;
    case Schema::A9:
      for (const Formula& phi : pool)
        for (const auto& x : vars) {
          if (phi.free_vars().count(x)) continue;  // side condition: x not free
          out.push_back({s, "A9[" + phi.str() + "; " + x + "]",
                         F::trunc_sub(F::sup(x, phi), phi)});
        }
      break;
    default:
      throw DomainError("not a quantifier schema: " + schema_name(s));
  }
  return out;
}

std::vector<AxiomInstance> instantiate_metric(Schema s) {
  const char* d = Signature::kMetric;
  switch (s) {
    case Schema::A10:
      return {{s, "A10", F::atomic(d, {v("x"), v("x")})}};
    case Schema::A11:
      return {{s, "A11",
               F::trunc_sub(F::atomic(d, {v("x"), v("y")}), F::atomic(d, {v("y"), v("x")}))}};
    case Schema::A12:
      return {{s, "A12",
               F::trunc_sub(F::trunc_sub(F::atomic(d, {v("x"), v("z")}),
                                         F::atomic(d, {v("x"), v("y")})),
                            F::atomic(d, {v("y"), v("z")}))}};
    default:
      throw DomainError("not a metric schema: " + schema_name(s));
  }
}

std::vector<AxiomInstance> instantiate_continuity(Schema s, const Signature& sig,
                                                  unsigned grid_exponent) {
  if (s != Schema::A13 && s != Schema::A14)
    throw DomainError("not a continuity schema: " + schema_name(s));
  bool functions = s == Schema::A13;
  std::vector<AxiomInstance> out;
  auto grid = dyadic_grid(grid_exponent);
  const auto& symbols = functions ? sig.functions() : sig.relations();
  for (const auto& sym : symbols) {
    for (unsigned i = 0; i < sym.arity; ++i) {
      for (const auto& [eps, delta] : sym.moduli[i].breakpoints()) {
        for (const Dyadic& r : grid) {
          if (!(r > eps)) continue;
          for (const Dyadic& q : grid) {
            if (q.is_zero() || !(q < delta)) continue;
            // arguments x..., z/w in slot i, y...
            std::vector<Term> a1, a2;
            for (unsigned j = 0; j < sym.arity; ++j) {
              if (j == i) {
                a1.push_back(v("z"));
                a2.push_back(v("w"));
              } else {
                a1.push_back(v("u" + std::to_string(j)));
                a2.push_back(v("u" + std::to_string(j)));
              }
            }
            Formula guard = F::trunc_sub(F::constant(q),
                                         F::atomic(Signature::kMetric, {v("z"), v("w")}));
            Formula moved;
            if (functions) {
              moved = F::atomic(Signature::kMetric,
                                {Term::app(sym.name, a1), Term::app(sym.name, a2)});
            } else {
              moved = F::trunc_sub(F::atomic(sym.name, a1), F::atomic(sym.name, a2));
            }
            Formula inst = F::land(guard, F::trunc_sub(moved, F::constant(r)));
            out.push_back({s,
                           schema_name(s) + "[" + sym.name + "; i=" + std::to_string(i) +
                               "; eps=" + eps.str() + "; r=" + r.str() + "; q=" + q.str() + "]",
                           inst});
          }
        }
      }
    }
  }
  return out;
}

namespace {

std::vector<std::string> atom_symbols(const Formula& f) {
  std::vector<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    switch (g.kind()) {
      case FormulaKind::Atomic:
        if (std::find(out.begin(), out.end(), g.relation()) == out.end())
          out.push_back(g.relation());
        break;
      case FormulaKind::Const:
        break;
      case FormulaKind::TruncSub:
        walk(g.left());
        walk(g.right());
        break;
      default:
        walk(g.body());
    }
  };
  walk(f);
  return out;
}

}  // namespace

ValidityReport check_validity_grid(std::span<const AxiomInstance> instances, unsigned exponent) {
  ValidityReport rep;
  rep.schema = instances.empty() ? "-" : schema_name(instances.front().schema);
  auto grid = dyadic_grid(exponent);
  for (const auto& inst : instances) {
    ++rep.instances;
    auto atoms = atom_symbols(inst.formula);
    std::vector<size_t> idx(atoms.size(), 0);
    TruthAssignment v0;
    while (true) {
      for (size_t i = 0; i < atoms.size(); ++i) v0[atoms[i]] = grid[idx[i]];
      Dyadic val = propositional_value(inst.formula, v0);
      ++rep.evaluations;
      if (val > rep.max_value) {
        rep.max_value = val;
        rep.worst = inst.label;
      }
      size_t i = 0;
      for (; i < idx.size(); ++i) {
        if (++idx[i] < grid.size()) break;
        idx[i] = 0;
      }
      if (i == idx.size()) break;
    }
  }
  return rep;
}

ValidityReport check_validity_structures(std::span<const AxiomInstance> instances,
                                         std::span<const WeakStructure> structures) {
  ValidityReport rep;
  rep.schema = instances.empty() ? "-" : schema_name(instances.front().schema);
  for (const auto& inst : instances) {
    ++rep.instances;
    auto fv = inst.formula.free_vars();
    std::vector<std::string> vars(fv.begin(), fv.end());
    for (const auto& m : structures) {
      std::vector<size_t> idx(vars.size(), 0);
      while (true) {
        Assignment sigma;
        for (size_t i = 0; i < vars.size(); ++i) sigma[vars[i]] = idx[i];
        Dyadic val = exact_value(m, inst.formula, sigma);
        ++rep.evaluations;
        if (val > rep.max_value) {
          rep.max_value = val;
          rep.worst = inst.label;
        }
        size_t i = 0;
        for (; i < idx.size(); ++i) {
          if (++idx[i] < m.size()) break;
          idx[i] = 0;
        }
        if (i == idx.size()) break;
      }
    }
  }
  return rep;
}

}  // namespace cfl
