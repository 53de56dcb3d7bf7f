#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfl/dyadic.hpp"
#include "cfl/formula.hpp"
#include "cfl/signature.hpp"

namespace cfl {

/// Weak pre-structure over a finite universe: total function tables and
/// exact dyadic relation tables, indexed by element position. Relations may
/// instead be backed by an interval callback (tuple, precision) ->
/// DyadicInterval; those structures evaluate approximately and are excluded
/// from diagram enumeration.
class WeakStructure {
 public:
  using IntervalFn = std::function<DyadicInterval(const std::vector<size_t>&, unsigned)>;

  WeakStructure() = default;
  WeakStructure(Signature sig, std::vector<std::string> universe);

  const Signature& signature() const { return sig_; }
  size_t size() const { return universe_.size(); }
  const std::vector<std::string>& universe() const { return universe_; }
  size_t element(const std::string& name) const;

  void set_function(const std::string& name, const std::vector<size_t>& args, size_t result);
  void set_relation(const std::string& name, const std::vector<size_t>& args, Dyadic value);
  void set_relation_interval(const std::string& name, IntervalFn fn);

  size_t apply(const std::string& fn, const std::vector<size_t>& args) const;
  bool relation_exact(const std::string& name) const;
  const Dyadic& rel(const std::string& name, const std::vector<size_t>& args) const;
  DyadicInterval rel_interval(const std::string& name, const std::vector<size_t>& args,
                              unsigned precision) const;
  Dyadic metric(size_t a, size_t b) const { return rel(Signature::kMetric, {a, b}); }

  /// Declared witness prefix: sup over the first k universe elements is
  /// promised to equal the true sup (meaningful for enumerated universes).
  std::optional<unsigned> witness_prefix() const { return witness_prefix_; }
  void set_witness_prefix(unsigned k) { witness_prefix_ = k; }

  /// Fills in the discrete metric for any missing d entries.
  void default_metric();

  /// Checks totality of tables and the pseudo-metric laws of d (exact,
  /// exhaustive). Throws DomainError on violation.
  void validate() const;

  /// Exhaustively checks the declared moduli: for every symbol, argument
  /// slot, staircase breakpoint (eps, delta) and pair at distance < delta,
  /// outputs move by at most eps. Returns human-readable violations.
  std::vector<std::string> moduli_violations() const;

  size_t tuple_rank(const std::vector<size_t>& args) const;

 private:
  Signature sig_;
  std::vector<std::string> universe_;
  std::map<std::string, std::vector<std::optional<size_t>>> fn_;
  std::map<std::string, std::vector<std::optional<Dyadic>>> rel_;
  std::map<std::string, IntervalFn> rel_cb_;
  std::optional<unsigned> witness_prefix_;
};

/// Countable universe presented as a monotone chain of finite prefixes.
class EnumeratedStructure {
 public:
  using PrefixFn = std::function<WeakStructure(unsigned stage)>;
  explicit EnumeratedStructure(PrefixFn provider) : provider_(std::move(provider)) {}

  /// Finite prefix at a stage. Prefixes are cached; the provider must be
  /// monotone (each universe a prefix of the next), which is spot-checked.
  const WeakStructure& prefix(unsigned stage);

 private:
  PrefixFn provider_;
  std::map<unsigned, WeakStructure> cache_;
};

/// JSON serialization of finite exact structures (documented in README).
WeakStructure structure_from_json(const std::string& text);
WeakStructure load_structure(const std::string& path);
std::string structure_to_json(const WeakStructure& m);

}  // namespace cfl
