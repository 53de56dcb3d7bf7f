#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfl/bitstring.hpp"

namespace cfl {

/// The exact form of a probabilistic decision machine: two finite antichains
/// of binary strings with disjoint cones. The machine accepts on any oracle
/// extending a member of the accept set, rejects on the reject set, and
/// diverges elsewhere, so its acceptance probability is exactly the accept
/// mass and lies in [P(K^A), 1 - P(K^R)].
class AllocationTable {
 public:
  struct LogEntry {
    unsigned stage;
    char side;  // 'A' or 'R'
    std::vector<BitString> added;
    Dyadic mass_after;
  };

  const std::vector<BitString>& accept_set() const { return accept_; }
  const std::vector<BitString>& reject_set() const { return reject_; }
  Dyadic accept_mass() const { return accept_mass_; }
  Dyadic reject_mass() const { return reject_mass_; }
  /// (P(K^A), 1 - P(K^R)): exact bounds on the acceptance probability.
  std::pair<Dyadic, Dyadic> acceptance_bounds() const {
    return {accept_mass_, reject_mass_.negate()};
  }

  /// Raises the accept mass to exactly `bound` (no-op when already met),
  /// carving leftmost free cones of the given string length first and
  /// topping up with longer strings for sub-2^-len remainders. Throws
  /// InfeasibleBound when bound + P(K^R) > 1 (the mass constraint).
  void allocate_accept(const Dyadic& bound, unsigned len, unsigned stage = 0);
  /// Same for the reject side: InfeasibleBound when P(K^A) + bound > 1.
  void allocate_reject(const Dyadic& bound, unsigned len, unsigned stage = 0);

  /// Classifies an oracle prefix: accept/reject when it extends (or equals)
  /// a member, nothing when undetermined.
  std::optional<bool> classify(const BitString& prefix) const;

  unsigned max_length() const;
  const std::vector<LogEntry>& log() const { return log_; }
  std::string render_log() const;

  /// Serialization: stage-annotated member lists (README documents it).
  std::string to_json() const;
  static AllocationTable from_json(const std::string& text);

 private:
  std::vector<BitString> accept_, reject_;
  Dyadic accept_mass_, reject_mass_;
  std::vector<LogEntry> log_;

  void allocate(std::vector<BitString>& side, Dyadic& side_mass, const Dyadic& opposite_mass,
                const Dyadic& bound, unsigned len, unsigned stage, char tag);
};

/// Stage-indexed approximants f (nondecreasing) and g (nonincreasing)
/// bracketing the acceptance probability.
struct ApproximantPair {
  Dyadic f;
  Dyadic g;
};

/// f = mass of the members of K^A among the first `stage` strings of the
/// effective length-lex enumeration (each accepting computation counted at
/// its minimal prefix); g symmetric for rejection.
ApproximantPair approximants(const AllocationTable& table, std::uint64_t stage);

}  // namespace cfl
