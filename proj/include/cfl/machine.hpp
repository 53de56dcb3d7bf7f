#pragma once

#include <functional>
#include <map>
#include <memory>
#include <random>

#include "cfl/allocation.hpp"
#include "cfl/eval.hpp"

namespace cfl {

/// Stream of random (or replayed) bits. Runs that outlast a finite stream
/// report divergence-at-prefix rather than blocking.
class BitSource {
 public:
  virtual ~BitSource() = default;
  virtual std::optional<int> next() = 0;
  unsigned consumed() const { return consumed_; }

 protected:
  unsigned consumed_ = 0;
};

/// Replays a fixed prefix, then runs dry.
class FixedBits : public BitSource {
 public:
  explicit FixedBits(BitString s) : s_(s) {}
  std::optional<int> next() override {
    if (consumed_ >= s_.len) return std::nullopt;
    int b = static_cast<int>((s_.bits >> (s_.len - consumed_ - 1)) & 1);
    ++consumed_;
    return b;
  }

 private:
  BitString s_;
};

/// Seeded unbounded stream.
class SeededBits : public BitSource {
 public:
  explicit SeededBits(std::uint64_t seed) : rng_(seed) {}
  std::optional<int> next() override {
    ++consumed_;
    return static_cast<int>(rng_() & 1);
  }

 private:
  std::mt19937_64 rng_;
};

enum class Outcome { Accept, Reject, Diverge };

struct RunResult {
  Outcome outcome = Outcome::Diverge;
  unsigned bits_read = 0;
};

/// A generic sampled probabilistic machine: per input, a program that reads
/// oracle bits and halts with accept/reject (or diverges). The fuel bound
/// caps bits per run; exactness claims hold only for table-backed machines.
struct SampledMachine {
  std::function<RunResult(const std::string& input, BitSource&)> program;
  unsigned fuel = 64;
};

/// Machine that walks oracle bits against a per-input allocation table.
SampledMachine machine_from_tables(std::shared_ptr<std::map<std::string, AllocationTable>> tables);
SampledMachine machine_from_table(AllocationTable table);

RunResult run(const SampledMachine& m, const std::string& input, BitSource& bits);

/// Approximants for a generic machine: run on each of the first `stage`
/// strings of the effective enumeration; a run counts at sigma when it
/// halts having consumed exactly sigma's bits (its minimal prefix).
ApproximantPair approximants(const SampledMachine& m, const std::string& input,
                             std::uint64_t stage);

/// Draws a Bernoulli(p) event using oracle bits (binary expansion
/// comparison; consumes bits only until decided).
bool bernoulli(BitSource& bits, const Dyadic& p);

struct SampleStats {
  std::uint64_t accepts = 0;
  std::uint64_t trials = 0;
};

/// Seeded acceptance-frequency estimate.
SampleStats sample_acceptance(const SampledMachine& m, const std::string& input,
                              std::uint64_t trials, std::uint64_t seed);

/// Majority vote of `repetitions` (odd) independent runs.
SampledMachine amplify(const SampledMachine& m, unsigned repetitions);

/// Exact majority-vote acceptance probability for a per-trial acceptance
/// probability p: the binomial upper tail at > m/2 successes.
Dyadic majority_acceptance_exact(const Dyadic& p, unsigned repetitions);

/// The structure (omega-prefix, A) with the discrete metric, where A(x) is
/// the probability that the machine accepts x. Exact when tables are given;
/// otherwise A is interval-backed by seeded sampling (a 3-sigma confidence
/// band, not a guaranteed enclosure).
WeakStructure bpp_structure_from_tables(const std::map<std::string, AllocationTable>& tables,
                                        size_t prefix);
WeakStructure bpp_structure_sampled(const SampledMachine& m, size_t prefix, std::uint64_t trials,
                                    std::uint64_t seed);

struct SeparationVerdict {
  bool in_a;
  std::uint64_t votes_a = 0;
  std::uint64_t trials = 0;
  Dyadic trial_accept_probability;  // exact per-trial bias of the vote coin
};

/// Decides which of two gamma-separated quantifier-free definable sets a
/// tuple belongs to, by majority over `trials` samples of a coin whose
/// acceptance probability is 1/2 + (psi-value - phi-value)/2 at the tuple.
/// With separation gamma the per-trial error is at most 1/2 - gamma, so the
/// majority errs with probability at most exp(-2 m gamma^2).
SeparationVerdict decide_separated(const WeakStructure& m, const Formula& phi, const Formula& psi,
                                   const Assignment& tuple, const Dyadic& gamma,
                                   unsigned trials, std::uint64_t seed);

/// The machine family of the no-derandomization construction: inputs
/// enumerated into a c.e. set at stage t >= 2 get acceptance probability
/// exactly 1 - sum_{i=2..t} 2^-i; inputs never enumerated get exactly 1/2
/// in the limit.
class NoDerandomizationMachine {
 public:
  /// enumeration: input -> stage t (t >= 2) at which it enters the set.
  explicit NoDerandomizationMachine(std::map<std::string, unsigned> enumeration);

  /// Finite allocation table after running the construction `budget` stages.
  AllocationTable table(const std::string& input, unsigned budget) const;
  /// Exact acceptance probability of the limit machine.
  Dyadic limit_acceptance(const std::string& input) const;

 private:
  std::map<std::string, unsigned> enumerated_at_;
};

}  // namespace cfl
