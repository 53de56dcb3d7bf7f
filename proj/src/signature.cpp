#include "cfl/signature.hpp"

#include <algorithm>

#include "cfl/errors.hpp"

namespace cfl {

Modulus::Modulus(std::vector<std::pair<Dyadic, Dyadic>> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) throw DomainError("modulus needs at least one breakpoint");
  for (const auto& [eps, del] : steps_)
    if (eps.is_zero() || del.is_zero())
      throw DomainError("modulus breakpoints must lie in (0,1]");
  std::sort(steps_.begin(), steps_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

Dyadic Modulus::delta(const Dyadic& epsilon) const {
  for (const auto& [eps, del] : steps_)
    if (eps >= epsilon) return del;
  return steps_.back().second;
}

void Signature::add_relation(std::string name, unsigned arity, std::vector<Modulus> moduli) {
  if (has_symbol(name)) throw DomainError("duplicate symbol: " + name);
  moduli.resize(arity);  // missing moduli default to the constant-1 staircase
  rels_.push_back({std::move(name), arity, std::move(moduli)});
}

void Signature::add_function(std::string name, unsigned arity, std::vector<Modulus> moduli) {
  if (has_symbol(name)) throw DomainError("duplicate symbol: " + name);
  moduli.resize(arity);
  fns_.push_back({std::move(name), arity, std::move(moduli)});
}

const Signature::Symbol* Signature::relation(const std::string& name) const {
  for (const auto& s : rels_)
    if (s.name == name) return &s;
  return nullptr;
}

const Signature::Symbol* Signature::function(const std::string& name) const {
  for (const auto& s : fns_)
    if (s.name == name) return &s;
  return nullptr;
}

bool Signature::has_symbol(const std::string& name) const {
  return relation(name) != nullptr || function(name) != nullptr;
}

std::optional<size_t> Signature::relation_index(const std::string& name) const {
  for (size_t i = 0; i < rels_.size(); ++i)
    if (rels_[i].name == name) return i;
  return std::nullopt;
}

std::optional<size_t> Signature::function_index(const std::string& name) const {
  for (size_t i = 0; i < fns_.size(); ++i)
    if (fns_[i].name == name) return i;
  return std::nullopt;
}

void Signature::validate() const {
  if (rels_.empty()) throw DomainError("signature must have at least one relation");
  const Symbol* d = relation(kMetric);
  if (d == nullptr || d->arity != 2)
    throw DomainError("signature must carry the binary relation d");
  for (const auto& s : rels_)
    if (function(s.name) != nullptr)
      throw DomainError("symbol in both relation and function sets: " + s.name);
  for (const auto& s : rels_)
    if (s.moduli.size() != s.arity) throw DomainError("modulus arity mismatch on " + s.name);
  for (const auto& s : fns_)
    if (s.moduli.size() != s.arity) throw DomainError("modulus arity mismatch on " + s.name);
}

Signature metric_only_signature() {
  Signature sig;
  sig.add_relation(Signature::kMetric, 2);
  return sig;
}

}  // namespace cfl
