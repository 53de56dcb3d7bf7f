#include "cfl/henkin.hpp"

#include <algorithm>
#include <functional>

#include "cfl/enumerate.hpp"
#include "cfl/errors.hpp"

namespace cfl {

namespace {

Term replace_constant_in_term(const Term& t, const std::string& name, const Term& repl) {
  if (t.is_var()) return t;
  if (t.symbol() == name && t.args().empty()) return repl;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(replace_constant_in_term(a, name, repl));
  return Term::app(t.symbol(), std::move(args));
}

Formula replace_constant(const Formula& f, const std::string& name, const Term& repl) {
  switch (f.kind()) {
    case FormulaKind::Atomic: {
      std::vector<Term> args;
      args.reserve(f.args().size());
      for (const Term& a : f.args()) args.push_back(replace_constant_in_term(a, name, repl));
      return Formula::atomic(f.relation(), std::move(args));
    }
    case FormulaKind::Const:
      return f;
    case FormulaKind::TruncSub:
      return Formula::trunc_sub(replace_constant(f.left(), name, repl),
                                replace_constant(f.right(), name, repl));
    case FormulaKind::Neg:
      return Formula::neg(replace_constant(f.body(), name, repl));
    case FormulaKind::Half:
      return Formula::half(replace_constant(f.body(), name, repl));
    case FormulaKind::Sup:
      return Formula::sup(f.bound_var(), replace_constant(f.body(), name, repl));
  }
  throw Error("unreachable formula kind");
}

void collect_all_vars(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Atomic:
      for (const Term& t : f.args()) t.collect_vars(out);
      break;
    case FormulaKind::Const:
      break;
    case FormulaKind::TruncSub:
      collect_all_vars(f.left(), out);
      collect_all_vars(f.right(), out);
      break;
    case FormulaKind::Neg:
    case FormulaKind::Half:
      collect_all_vars(f.body(), out);
      break;
    case FormulaKind::Sup:
      out.insert(f.bound_var());
      collect_all_vars(f.body(), out);
      break;
  }
}

std::string pair_key(const Formula& a, const Formula& b) {
  std::string sa = a.str(), sb = b.str();
  return sa <= sb ? sa + " || " + sb : sb + " || " + sa;
}

Dyadic midpoint(const Dyadic& lo, const Dyadic& hi) {
  return lo.add(hi.trunc_sub(lo).halve());
}

}  // namespace

Formula henkin_axiom(const Formula& phi, const std::string& x, const Dyadic& p, const Dyadic& q,
                     const std::string& constant) {
  if (!(p < q)) throw DomainError("witness axiom needs p < q, got p=" + p.str() + " q=" + q.str());
  Formula left = Formula::trunc_sub(Formula::sup(x, phi), Formula::constant(q));
  Formula right =
      Formula::trunc_sub(Formula::constant(p), phi.substitute(Term::constant(constant), x));
  return Formula::land(std::move(left), std::move(right));
}

Construction::Construction(std::shared_ptr<TheoryOracle> oracle, Signature base,
                           HenkinOptions opt)
    : oracle_(std::move(oracle)), base_sig_(std::move(base)), working_sig_(base_sig_),
      opt_(opt) {
  base_sig_.validate();
}

bool Construction::is_witness_constant(const std::string& name) const {
  for (const auto& c : constants_)
    if (c.name == name) return true;
  return false;
}

unsigned Construction::constant_level(const std::string& name) const {
  for (const auto& c : constants_)
    if (c.name == name) return c.level;
  if (base_sig_.has_symbol(name)) return 0;
  throw DomainError("unknown constant: " + name);
}

std::optional<std::string> Construction::extend_language() {
  // Enumerate witness tuples over the current working language; the first
  // tuple not yet materialized wins. Constants of level n feed formulas
  // whose witnesses sit at level n+1, so the stratification grows on its
  // own.
  auto grid = dyadic_grid(opt_.pq_exponent);
  for (const Formula& phi : enumerate_formulas(working_sig_, opt_.witness_formula_weight)) {
    auto fv = phi.free_vars();
    if (fv.empty()) continue;
    for (const std::string& x : fv) {
      for (const Dyadic& p : grid) {
        for (const Dyadic& q : grid) {
          if (!(p < q)) continue;
          std::string key = phi.str() + " @ " + x + " @ " + p.str() + " @ " + q.str();
          if (tuple_key_.count(key)) continue;
          std::string cname = "c" + std::to_string(constants_.size());
          unsigned level = 0;
          for (const std::string& sym : phi.symbols())
            if (is_witness_constant(sym)) level = std::max(level, constant_level(sym));
          tuple_key_[key] = cname;
          constants_.push_back({cname, level + 1});
          working_sig_.add_function(cname, 0);
          Formula axiom = henkin_axiom(phi, x, p, q, cname);
          commit(axiom);
          trace_ += std::to_string(stage_) + " | DELTA " + axiom.str() + "\n";
          return cname;
        }
      }
    }
  }
  return std::nullopt;
}

void Construction::commit(const Formula& sentence) {
  std::string key = sentence.str();
  if (chain_keys_.count(key)) return;
  chain_.push_back(sentence);
  chain_keys_.insert(key);
}

Formula Construction::probe(const Formula& body) const {
  Formula chi = body;
  if (!chain_.empty()) {
    Formula theta = chain_.front();
    for (size_t i = 1; i < chain_.size(); ++i) theta = Formula::land(theta, chain_[i]);
    chi = Formula::trunc_sub(chi, theta);
  }
  // Replace witness constants by fresh variables and sup-close, in registry
  // order (outermost binder first).
  std::set<std::string> used;
  collect_all_vars(chi, used);
  auto chi_syms = chi.symbols();
  std::vector<std::pair<std::string, std::string>> bound;  // constant -> variable
  unsigned counter = 0;
  for (const auto& c : constants_) {
    if (!chi_syms.count(c.name)) continue;
    std::string v;
    do {
      v = "w" + std::to_string(counter++);
    } while (used.count(v));
    used.insert(v);
    chi = replace_constant(chi, c.name, Term::var(v));
    bound.emplace_back(c.name, v);
  }
  for (auto it = bound.rbegin(); it != bound.rend(); ++it) chi = Formula::sup(it->second, chi);
  return chi;
}

bool Construction::pair_decided(const Formula& psi, const Formula& phi) const {
  return decided_keys_.count(pair_key(psi, phi)) > 0;
}

void Construction::decide_pair(const Formula& psi, const Formula& phi) {
  if (pair_decided(psi, phi)) return;
  Formula forward = Formula::trunc_sub(psi, phi);
  Formula backward = Formula::trunc_sub(phi, psi);
  // "If so ... otherwise": the psi -. phi direction is tested first.
  Formula committed = oracle_->zero_test(probe(forward)) ? forward : backward;
  commit(committed);
  decided_keys_.insert(pair_key(psi, phi));
  trace_ += std::to_string(stage_) + " | DELTA " + committed.str() + "\n";
}

void Construction::track(const Formula& sentence) {
  if (!sentence.is_sentence())
    throw DomainError("can only track sentences, got: " + sentence.str());
  std::string key = sentence.str();
  if (tracked_.count(key)) return;
  tracked_.emplace(key, Tracked{sentence, Dyadic::zero(), Dyadic::one(), {}});
  tracked_order_.push_back(sentence);
}

std::pair<Dyadic, Dyadic> Construction::bounds(const Formula& sentence) const {
  auto it = tracked_.find(sentence.str());
  if (it == tracked_.end()) throw DomainError("sentence not tracked: " + sentence.str());
  return {it->second.lo, it->second.hi};
}

const AllocationTable& Construction::table(const Formula& sentence) const {
  auto it = tracked_.find(sentence.str());
  if (it == tracked_.end()) throw DomainError("sentence not tracked: " + sentence.str());
  return it->second.table;
}

void Construction::refine(Tracked& t) {
  if (t.lo == t.hi) return;
  Dyadic mid = midpoint(t.lo, t.hi);
  bool at_most = oracle_->zero_test(probe(Formula::trunc_sub(t.sentence, Formula::constant(mid))));
  bool at_least = oracle_->zero_test(probe(Formula::trunc_sub(Formula::constant(mid), t.sentence)));
  // With a sound oracle at least one direction holds; on a contradictory
  // reply the bracket simply stays put (still sound).
  if (at_most) t.hi = mid;
  if (at_least) t.lo = mid;
}

std::pair<Dyadic, Dyadic> Construction::probe_bounds(const Formula& sentence,
                                                     unsigned exponent) const {
  Dyadic lo = Dyadic::zero(), hi = Dyadic::one();
  for (unsigned k = 0; k < exponent && !(lo == hi); ++k) {
    Dyadic mid = midpoint(lo, hi);
    if (oracle_->zero_test(probe(Formula::trunc_sub(sentence, Formula::constant(mid)))))
      hi = mid;
    if (oracle_->zero_test(probe(Formula::trunc_sub(Formula::constant(mid), sentence))))
      lo = mid;
  }
  return {lo, hi};
}

void Construction::run_stage() {
  ++stage_;
  for (unsigned i = 0; i < opt_.constants_per_stage; ++i) extend_language();
  // Chain decisions: first undecided pairs of the capped sentence
  // enumeration over the current working language.
  unsigned decided = 0;
  auto sentences = enumerate_sentences(working_sig_, opt_.pair_weight);
  for (size_t i = 0; i < sentences.size() && decided < opt_.pairs_per_stage; ++i)
    for (size_t j = i + 1; j < sentences.size() && decided < opt_.pairs_per_stage; ++j) {
      if (pair_decided(sentences[i], sentences[j])) continue;
      decide_pair(sentences[i], sentences[j]);
      ++decided;
    }
  // Bound refinement and allocation for every tracked sentence.
  for (auto& [key, t] : tracked_) {
    refine(t);
    size_t log_mark = t.table.log().size();
    t.table.allocate_accept(t.lo, stage_, stage_);
    t.table.allocate_reject(t.hi.negate(), stage_, stage_);
    for (size_t li = log_mark; li < t.table.log().size(); ++li) {
      const auto& entry = t.table.log()[li];
      std::string strings;
      for (size_t i = 0; i < entry.added.size(); ++i) {
        if (i > 0) strings += ",";
        strings += entry.added[i].str();
      }
      trace_ += std::to_string(stage_) + " | ALLOC " + entry.side + " " + key + " " + strings +
                " " + entry.mass_after.str() + "\n";
    }
  }
}

void Construction::run(unsigned stages) {
  for (unsigned i = 0; i < stages; ++i) run_stage();
}

AllocationTable Construction::build_machine(const Formula& sentence, unsigned precision,
                                            unsigned max_stages) {
  track(sentence);
  Dyadic target(1, precision);
  while (true) {
    auto [lo, hi] = bounds(sentence);
    if (hi.trunc_sub(lo) <= target) break;
    if (stage_ >= max_stages)
      throw BudgetExhausted("stage budget " + std::to_string(max_stages) +
                            " exhausted; bounds on " + sentence.str() + " are [" + lo.str() +
                            ", " + hi.str() + "]");
    run_stage();
  }
  return table(sentence);
}

std::vector<Term> Construction::closed_terms(unsigned weight) const {
  // Closed terms by weight: 0-ary symbols first, then applications.
  std::vector<std::vector<Term>> by_weight(weight + 1);
  const auto& fns = working_sig_.functions();
  for (unsigned w = 1; w <= weight; ++w) {
    for (size_t fi = 0; fi < fns.size(); ++fi) {
      if (1 + fi > w) continue;
      unsigned budget = w - 1 - static_cast<unsigned>(fi);
      if (fns[fi].arity == 0) {
        if (budget == 0) by_weight[w].push_back(Term::constant(fns[fi].name));
        continue;
      }
      if (fns[fi].arity == 1) {
        if (budget >= 1)
          for (const Term& t : by_weight[budget])
            by_weight[w].push_back(Term::app(fns[fi].name, {t}));
        continue;
      }
      // Arity >= 2: split the budget over two leading arguments and fill
      // the rest with the lightest closed term, if any.
      if (fns[fi].arity == 2) {
        for (unsigned lw = 1; lw + 1 <= budget; ++lw)
          for (const Term& a : by_weight[lw])
            for (const Term& b : by_weight[budget - lw])
              by_weight[w].push_back(Term::app(fns[fi].name, {a, b}));
      }
    }
  }
  std::vector<Term> out;
  for (unsigned w = 1; w <= weight; ++w) {
    std::vector<Term>& batch = by_weight[w];
    std::sort(batch.begin(), batch.end(),
              [](const Term& a, const Term& b) { return a.str() < b.str(); });
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

TermModel Construction::term_model(unsigned term_weight) const {
  TermModel tm;
  tm.universe = closed_terms(term_weight);
  for (const auto& [key, t] : tracked_) tm.sentence_bounds[key] = {t.lo, t.hi};
  return tm;
}

MetricReport Construction::metric_check(unsigned term_weight) const {
  MetricReport rep;
  std::vector<Term> terms = closed_terms(term_weight);
  if (terms.size() > 8) terms.resize(8);  // sampled pairs
  size_t n = terms.size();
  std::vector<size_t> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  bool undecided = false;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      Formula dist = Formula::atomic(Signature::kMetric, {terms[i], terms[j]});
      auto [lo, hi] = probe_bounds(dist, std::max(stage_, 3u));
      if (hi.is_zero()) {
        if (find(i) != find(j)) {
          parent[find(i)] = find(j);
          rep.merged.emplace_back(terms[i].str(), terms[j].str());
        }
      } else if (lo.is_zero()) {
        undecided = true;
      }
    }
  std::set<size_t> roots;
  for (size_t i = 0; i < n; ++i) roots.insert(find(i));
  for (size_t r : roots) rep.class_representatives.push_back(terms[r].str());
  if (!rep.merged.empty())
    rep.verdict = MetricReport::Verdict::PseudoMetric;
  else if (undecided)
    rep.verdict = MetricReport::Verdict::Undecided;
  else
    rep.verdict = MetricReport::Verdict::Metric;
  return rep;
}

}  // namespace cfl
