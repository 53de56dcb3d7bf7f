#include "cfl/structure.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cfl/errors.hpp"

namespace cfl {

using nlohmann::json;

WeakStructure::WeakStructure(Signature sig, std::vector<std::string> universe)
    : sig_(std::move(sig)), universe_(std::move(universe)) {
  if (universe_.empty()) throw DomainError("universe must be nonempty");
  for (const auto& e : universe_)
    if (sig_.has_symbol(e))
      throw DomainError("universe element name collides with a symbol: " + e);
  auto table_size = [&](unsigned arity) {
    size_t n = 1;
    for (unsigned i = 0; i < arity; ++i) n *= universe_.size();
    return n;
  };
  for (const auto& s : sig_.functions())
    fn_[s.name].resize(table_size(s.arity));
  for (const auto& s : sig_.relations())
    rel_[s.name].resize(table_size(s.arity));
}

size_t WeakStructure::element(const std::string& name) const {
  for (size_t i = 0; i < universe_.size(); ++i)
    if (universe_[i] == name) return i;
  throw DomainError("unknown universe element: " + name);
}

size_t WeakStructure::tuple_rank(const std::vector<size_t>& args) const {
  size_t rank = 0;
  for (size_t a : args) {
    if (a >= universe_.size()) throw DomainError("element index out of range");
    rank = rank * universe_.size() + a;
  }
  return rank;
}

void WeakStructure::set_function(const std::string& name, const std::vector<size_t>& args,
                                 size_t result) {
  auto it = fn_.find(name);
  if (it == fn_.end()) throw DomainError("unknown function symbol: " + name);
  if (args.size() != sig_.function(name)->arity) throw DomainError("arity mismatch on " + name);
  if (result >= universe_.size()) throw DomainError("function value out of range");
  it->second[tuple_rank(args)] = result;
}

void WeakStructure::set_relation(const std::string& name, const std::vector<size_t>& args,
                                 Dyadic value) {
  auto it = rel_.find(name);
  if (it == rel_.end()) throw DomainError("unknown relation symbol: " + name);
  if (args.size() != sig_.relation(name)->arity) throw DomainError("arity mismatch on " + name);
  it->second[tuple_rank(args)] = std::move(value);
}

void WeakStructure::set_relation_interval(const std::string& name, IntervalFn fn) {
  if (sig_.relation(name) == nullptr) throw DomainError("unknown relation symbol: " + name);
  rel_cb_[name] = std::move(fn);
}

size_t WeakStructure::apply(const std::string& fn, const std::vector<size_t>& args) const {
  auto it = fn_.find(fn);
  if (it == fn_.end()) throw DomainError("unknown function symbol: " + fn);
  const auto& slot = it->second[tuple_rank(args)];
  if (!slot) throw DomainError("function " + fn + " undefined on a tuple");
  return *slot;
}

bool WeakStructure::relation_exact(const std::string& name) const {
  return rel_cb_.find(name) == rel_cb_.end();
}

const Dyadic& WeakStructure::rel(const std::string& name, const std::vector<size_t>& args) const {
  if (!relation_exact(name))
    throw DomainError("relation " + name + " is interval-backed; exact value unavailable");
  auto it = rel_.find(name);
  if (it == rel_.end()) throw DomainError("unknown relation symbol: " + name);
  const auto& slot = it->second[tuple_rank(args)];
  if (!slot) throw DomainError("relation " + name + " undefined on a tuple");
  return *slot;
}

DyadicInterval WeakStructure::rel_interval(const std::string& name,
                                           const std::vector<size_t>& args,
                                           unsigned precision) const {
  auto cb = rel_cb_.find(name);
  if (cb != rel_cb_.end()) return cb->second(args, precision);
  return DyadicInterval(rel(name, args));
}

void WeakStructure::default_metric() {
  auto it = rel_.find(Signature::kMetric);
  if (it == rel_.end()) return;
  for (size_t a = 0; a < universe_.size(); ++a)
    for (size_t b = 0; b < universe_.size(); ++b) {
      auto& slot = it->second[tuple_rank({a, b})];
      if (!slot) slot = (a == b) ? Dyadic::zero() : Dyadic::one();
    }
}

void WeakStructure::validate() const {
  sig_.validate();
  for (const auto& s : sig_.functions()) {
    for (const auto& slot : fn_.at(s.name))
      if (!slot) throw DomainError("function table for " + s.name + " is not total");
  }
  for (const auto& s : sig_.relations()) {
    if (!relation_exact(s.name)) continue;
    for (const auto& slot : rel_.at(s.name))
      if (!slot) throw DomainError("relation table for " + s.name + " is not total");
  }
  if (!relation_exact(Signature::kMetric)) return;  // can't check an interval-backed metric exactly
  size_t n = universe_.size();
  for (size_t a = 0; a < n; ++a) {
    if (!metric(a, a).is_zero()) throw DomainError("d not zero on the diagonal");
    for (size_t b = 0; b < n; ++b) {
      if (metric(a, b) != metric(b, a)) throw DomainError("d not symmetric");
      for (size_t c = 0; c < n; ++c)
        if (metric(a, c).trunc_sub(metric(a, b)) > metric(b, c))
          throw DomainError("d violates the triangle inequality");
    }
  }
}

std::vector<std::string> WeakStructure::moduli_violations() const {
  std::vector<std::string> out;
  size_t n = universe_.size();
  auto tuples = [&](unsigned arity) {
    std::vector<std::vector<size_t>> all;
    std::vector<size_t> cur(arity, 0);
    while (true) {
      all.push_back(cur);
      size_t i = 0;
      for (; i < arity; ++i) {
        if (++cur[i] < n) break;
        cur[i] = 0;
      }
      if (i == arity) break;
      if (arity == 0) break;
    }
    if (arity == 0) all = {{}};
    return all;
  };
  auto check_symbol = [&](const Signature::Symbol& s, bool is_fn) {
    for (unsigned i = 0; i < s.arity; ++i) {
      for (const auto& [eps, del] : s.moduli[i].breakpoints()) {
        for (const auto& rest : tuples(s.arity - 1)) {
          for (size_t c = 0; c < n; ++c)
            for (size_t e = 0; e < n; ++e) {
              if (!(metric(c, e) < del)) continue;
              std::vector<size_t> tc(rest.begin(), rest.begin() + i);
              tc.push_back(c);
              tc.insert(tc.end(), rest.begin() + i, rest.end());
              std::vector<size_t> te = tc;
              te[i] = e;
              Dyadic moved = is_fn ? metric(apply(s.name, tc), apply(s.name, te))
                                   : rel(s.name, tc).abs_diff(rel(s.name, te));
              if (moved > eps)
                out.push_back(s.name + " arg " + std::to_string(i) + " moves " + moved.str() +
                              " > eps " + eps.str() + " under delta " + del.str());
            }
        }
      }
    }
  };
  for (const auto& s : sig_.relations())
    if (relation_exact(s.name)) check_symbol(s, false);
  for (const auto& s : sig_.functions()) check_symbol(s, true);
  return out;
}

const WeakStructure& EnumeratedStructure::prefix(unsigned stage) {
  auto it = cache_.find(stage);
  if (it != cache_.end()) return it->second;
  WeakStructure m = provider_(stage);
  if (!cache_.empty()) {
    const WeakStructure& prev = cache_.rbegin()->second;
    if (cache_.rbegin()->first <= stage) {
      if (m.size() < prev.size()) throw DomainError("enumerator shrank the universe");
      for (size_t i = 0; i < prev.size(); ++i)
        if (prev.universe()[i] != m.universe()[i])
          throw DomainError("enumerator is not a prefix chain");
    }
  }
  return cache_.emplace(stage, std::move(m)).first->second;
}

namespace {

std::vector<Modulus> moduli_from_json(const json& j) {
  std::vector<Modulus> out;
  if (!j.contains("moduli")) return out;
  for (const auto& m : j.at("moduli")) {
    std::vector<std::pair<Dyadic, Dyadic>> steps;
    for (const auto& step : m)
      steps.emplace_back(Dyadic::parse(step.at(0).get<std::string>()),
                         Dyadic::parse(step.at(1).get<std::string>()));
    out.emplace_back(std::move(steps));
  }
  return out;
}

}  // namespace

WeakStructure structure_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.value("format", "") != "cfl-structure")
    throw DomainError("not a cfl-structure file");
  if (j.value("version", 0) != 1) throw DomainError("unsupported structure file version");

  Signature sig;
  bool has_d = false;
  for (const auto& r : j.value("relations", json::array())) {
    std::string name = r.at("name").get<std::string>();
    if (name == Signature::kMetric) has_d = true;
    sig.add_relation(name, r.at("arity").get<unsigned>(), moduli_from_json(r));
  }
  if (!has_d) sig.add_relation(Signature::kMetric, 2);
  for (const auto& f : j.value("functions", json::array()))
    sig.add_function(f.at("name").get<std::string>(), f.at("arity").get<unsigned>(),
                     moduli_from_json(f));

  WeakStructure m(sig, j.at("universe").get<std::vector<std::string>>());

  const json& interp = j.at("interpretation");
  for (const auto& [name, rows] : interp.value("functions", json::object()).items()) {
    for (const auto& row : rows) {
      std::vector<size_t> args;
      for (const auto& a : row.at(0)) args.push_back(m.element(a.get<std::string>()));
      m.set_function(name, args, m.element(row.at(1).get<std::string>()));
    }
  }
  for (const auto& [name, rows] : interp.value("relations", json::object()).items()) {
    for (const auto& row : rows) {
      std::vector<size_t> args;
      for (const auto& a : row.at(0)) args.push_back(m.element(a.get<std::string>()));
      m.set_relation(name, args, Dyadic::parse(row.at(1).get<std::string>()));
    }
  }
  m.default_metric();
  if (j.contains("witness_prefix")) m.set_witness_prefix(j.at("witness_prefix").get<unsigned>());
  m.validate();
  return m;
}

WeakStructure load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open structure file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return structure_from_json(ss.str());
}

std::string structure_to_json(const WeakStructure& m) {
  json j;
  j["format"] = "cfl-structure";
  j["version"] = 1;
  json rels = json::array(), fns = json::array();
  auto moduli_json = [](const std::vector<Modulus>& ms) {
    json out = json::array();
    for (const auto& mod : ms) {
      json steps = json::array();
      for (const auto& [e, d] : mod.breakpoints()) steps.push_back({e.str(), d.str()});
      out.push_back(steps);
    }
    return out;
  };
  for (const auto& s : m.signature().relations())
    rels.push_back({{"name", s.name}, {"arity", s.arity}, {"moduli", moduli_json(s.moduli)}});
  for (const auto& s : m.signature().functions())
    fns.push_back({{"name", s.name}, {"arity", s.arity}, {"moduli", moduli_json(s.moduli)}});
  j["relations"] = rels;
  j["functions"] = fns;
  j["universe"] = m.universe();

  auto all_tuples = [&](unsigned arity) {
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> cur(arity, 0);
    size_t total = 1;
    for (unsigned i = 0; i < arity; ++i) total *= m.size();
    for (size_t t = 0; t < total; ++t) {
      out.push_back(cur);
      for (size_t i = arity; i-- > 0;) {
        if (++cur[i] < m.size()) break;
        cur[i] = 0;
      }
    }
    return out;
  };
  json jf = json::object(), jr = json::object();
  for (const auto& s : m.signature().functions()) {
    json rows = json::array();
    for (const auto& t : all_tuples(s.arity)) {
      json names = json::array();
      for (size_t a : t) names.push_back(m.universe()[a]);
      rows.push_back({names, m.universe()[m.apply(s.name, t)]});
    }
    jf[s.name] = rows;
  }
  for (const auto& s : m.signature().relations()) {
    if (!m.relation_exact(s.name)) continue;
    json rows = json::array();
    for (const auto& t : all_tuples(s.arity)) {
      json names = json::array();
      for (size_t a : t) names.push_back(m.universe()[a]);
      rows.push_back({names, m.rel(s.name, t).str()});
    }
    jr[s.name] = rows;
  }
  j["interpretation"] = {{"functions", jf}, {"relations", jr}};
  if (m.witness_prefix()) j["witness_prefix"] = *m.witness_prefix();
  return j.dump(2);
}

}  // namespace cfl
