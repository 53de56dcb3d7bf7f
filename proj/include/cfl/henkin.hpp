#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cfl/allocation.hpp"
#include "cfl/oracle.hpp"

namespace cfl {

/// The witness axiom (sup_x phi -. q) /\ (p -. phi[c/x]) for a fresh
/// constant c. Throws DomainError unless p < q.
Formula henkin_axiom(const Formula& phi, const std::string& x, const Dyadic& p, const Dyadic& q,
                     const std::string& constant);

struct HenkinOptions {
  unsigned witness_formula_weight = 4;  // enumeration cap for witness formulas
  unsigned pq_exponent = 1;             // (p, q) grid for witness axioms
  unsigned pair_weight = 5;             // sentence weight cap for chain decisions
  unsigned constants_per_stage = 1;
  unsigned pairs_per_stage = 1;
};

struct TermModel {
  std::vector<Term> universe;  // closed terms over the working language
  std::map<std::string, std::pair<Dyadic, Dyadic>> sentence_bounds;
};

struct MetricReport {
  enum class Verdict { Metric, PseudoMetric, Undecided } verdict;
  /// Term pairs the theory forces to distance 0 (quotient merges).
  std::vector<std::pair<std::string, std::string>> merged;
  /// Representatives of the d=0 classes of the sampled terms.
  std::vector<std::string> class_representatives;
};

/// The effective-completeness engine: extends the language by Henkin
/// witnesses, totally orders sentence pairs through oracle-sanctioned chain
/// decisions, brackets tracked sentences between dyadic bounds, and feeds
/// the bounds into allocation tables whose acceptance probabilities
/// converge to the sentence values.
class Construction {
 public:
  Construction(std::shared_ptr<TheoryOracle> oracle, Signature base, HenkinOptions opt = {});

  // --- language extension ---------------------------------------------
  /// Materializes the next witness tuple (phi, x, p, q) in enumeration
  /// order, registering its constant and committing the witness axiom.
  /// Returns the constant name, or nothing when the capped enumeration is
  /// exhausted. The same tuple always yields the same constant.
  std::optional<std::string> extend_language();
  const Signature& working_signature() const { return working_sig_; }
  /// Stratification level: base symbols are 0; a witness constant is one
  /// above the deepest constant in its defining formula.
  unsigned constant_level(const std::string& name) const;
  size_t constant_count() const { return constants_.size(); }

  // --- the chain -------------------------------------------------------
  /// Decides the pair by testing psi -. phi first (committing it when the
  /// oracle confirms), else committing phi -. psi. Idempotent.
  void decide_pair(const Formula& psi, const Formula& phi);
  bool pair_decided(const Formula& psi, const Formula& phi) const;
  const std::vector<Formula>& chain() const { return chain_; }

  /// The sup-closed oracle query for "body holds under the chain": body -.
  /// (left-fold conjunction of the chain), witness constants replaced by
  /// fresh sup-bound variables.
  Formula probe(const Formula& body) const;

  // --- tracked sentences ----------------------------------------------
  void track(const Formula& sentence);
  const std::vector<Formula>& tracked() const { return tracked_order_; }
  /// Current dyadic bracket around the sentence's theory value.
  std::pair<Dyadic, Dyadic> bounds(const Formula& sentence) const;
  const AllocationTable& table(const Formula& sentence) const;
  /// Bisection-refined bounds for an arbitrary sentence at the given grid
  /// exponent (no allocation side effects).
  std::pair<Dyadic, Dyadic> probe_bounds(const Formula& sentence, unsigned exponent) const;

  // --- stage driver ----------------------------------------------------
  /// One fair round: language extension, pair decisions, bound refinement,
  /// allocation.
  void run_stage();
  void run(unsigned stages);
  unsigned stage() const { return stage_; }

  /// Advances stages until the sentence's bracket width reaches
  /// 2^-precision, then returns its table. Throws BudgetExhausted (the
  /// message carries the partial bounds) when max_stages hits first.
  AllocationTable build_machine(const Formula& sentence, unsigned precision, unsigned max_stages);

  // --- exports ---------------------------------------------------------
  TermModel term_model(unsigned term_weight) const;
  MetricReport metric_check(unsigned term_weight = 3) const;
  const std::string& trace() const { return trace_; }

 private:
  struct Tracked {
    Formula sentence;
    Dyadic lo;
    Dyadic hi = Dyadic::one();
    AllocationTable table;
  };

  std::shared_ptr<TheoryOracle> oracle_;
  Signature base_sig_;
  Signature working_sig_;
  HenkinOptions opt_;
  unsigned stage_ = 0;

  struct WitnessConstant {
    std::string name;
    unsigned level;
  };
  std::vector<WitnessConstant> constants_;        // registry order = binding order
  std::map<std::string, std::string> tuple_key_;  // (phi,x,p,q) key -> constant name

  std::vector<Formula> chain_;
  std::set<std::string> chain_keys_;    // committed sentences (by text)
  std::set<std::string> decided_keys_;  // processed unordered pairs

  std::map<std::string, Tracked> tracked_;  // by sentence text (deterministic order)
  std::vector<Formula> tracked_order_;

  std::string trace_;

  bool is_witness_constant(const std::string& name) const;
  void commit(const Formula& sentence);
  void refine(Tracked& t);
  std::vector<Term> closed_terms(unsigned weight) const;
};

}  // namespace cfl
