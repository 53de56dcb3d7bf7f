#include "cfl/machine.hpp"

#include <algorithm>

#include "cfl/errors.hpp"

namespace cfl {

namespace {

/// Caps the bits a program may read in one run.
class FuelSource : public BitSource {
 public:
  FuelSource(BitSource& inner, unsigned fuel) : inner_(inner), fuel_(fuel) {}
  std::optional<int> next() override {
    if (consumed_ >= fuel_) return std::nullopt;
    auto b = inner_.next();
    if (b) ++consumed_;
    return b;
  }

 private:
  BitSource& inner_;
  unsigned fuel_;
};

RunResult walk_table(const AllocationTable& t, BitSource& bits) {
  BitString prefix;
  unsigned limit = t.max_length();
  while (true) {
    auto v = t.classify(prefix);
    if (v) return {*v ? Outcome::Accept : Outcome::Reject, prefix.len};
    if (prefix.len >= limit) return {Outcome::Diverge, prefix.len};
    auto b = bits.next();
    if (!b) return {Outcome::Diverge, prefix.len};
    prefix = {prefix.len + 1, (prefix.bits << 1) | static_cast<std::uint64_t>(*b)};
  }
}

}  // namespace

SampledMachine machine_from_tables(
    std::shared_ptr<std::map<std::string, AllocationTable>> tables) {
  unsigned fuel = 1;
  for (const auto& [k, t] : *tables) fuel = std::max(fuel, t.max_length());
  return {[tables](const std::string& input, BitSource& bits) -> RunResult {
            auto it = tables->find(input);
            if (it == tables->end()) return {Outcome::Diverge, 0};
            return walk_table(it->second, bits);
          },
          fuel};
}

SampledMachine machine_from_table(AllocationTable table) {
  auto tables = std::make_shared<std::map<std::string, AllocationTable>>();
  unsigned fuel = std::max(1u, table.max_length());
  (*tables)[""] = std::move(table);
  return {[tables](const std::string&, BitSource& bits) -> RunResult {
            return walk_table(tables->at(""), bits);
          },
          fuel};
}

RunResult run(const SampledMachine& m, const std::string& input, BitSource& bits) {
  FuelSource fs(bits, m.fuel);
  RunResult r = m.program(input, fs);
  r.bits_read = fs.consumed();
  return r;
}

ApproximantPair approximants(const SampledMachine& m, const std::string& input,
                             std::uint64_t stage) {
  Dyadic f, rejected;
  for (std::uint64_t i = 0; i < stage; ++i) {
    BitString s = nth_string(i);
    FixedBits src(s);
    RunResult r = m.program(input, src);
    if (r.bits_read != s.len) continue;  // counted at its minimal prefix instead
    if (r.outcome == Outcome::Accept) f = f.add(s.measure());
    if (r.outcome == Outcome::Reject) rejected = rejected.add(s.measure());
  }
  return {f, rejected.negate()};
}

bool bernoulli(BitSource& bits, const Dyadic& p) {
  if (p.is_one()) return true;
  for (unsigned j = 0; j < p.exponent(); ++j) {
    int pbit = static_cast<int>((p.numerator() >> (p.exponent() - 1 - j)) & 1);
    auto b = bits.next();
    if (!b) return false;
    if (*b != pbit) return *b < pbit;
  }
  return false;
}

SampleStats sample_acceptance(const SampledMachine& m, const std::string& input,
                              std::uint64_t trials, std::uint64_t seed) {
  SeededBits src(seed);
  SampleStats st;
  for (std::uint64_t i = 0; i < trials; ++i) {
    ++st.trials;
    if (run(m, input, src).outcome == Outcome::Accept) ++st.accepts;
  }
  return st;
}

SampledMachine amplify(const SampledMachine& m, unsigned repetitions) {
  if (repetitions % 2 == 0) throw DomainError("amplification needs an odd repetition count");
  auto inner = m;
  return {[inner, repetitions](const std::string& input, BitSource& bits) -> RunResult {
            unsigned accepts = 0;
            for (unsigned i = 0; i < repetitions; ++i) {
              FuelSource fs(bits, inner.fuel);
              if (inner.program(input, fs).outcome == Outcome::Accept) ++accepts;
            }
            return {accepts > repetitions / 2 ? Outcome::Accept : Outcome::Reject, 0};
          },
          m.fuel * repetitions};
}

Dyadic majority_acceptance_exact(const Dyadic& p, unsigned repetitions) {
  if (repetitions % 2 == 0) throw DomainError("majority vote needs an odd repetition count");
  unsigned e = p.exponent();
  BigInt k = p.numerator();
  BigInt unit = BigInt(1) << e;
  BigInt numerator = 0;
  // C(m, j) k^j (unit - k)^(m-j) summed over j > m/2, over denominator unit^m.
  BigInt binom = 1;
  std::vector<BigInt> binoms(repetitions + 1);
  for (unsigned j = 0; j <= repetitions; ++j) {
    binoms[j] = binom;
    binom = binom * (repetitions - j) / (j + 1);
  }
  for (unsigned j = repetitions / 2 + 1; j <= repetitions; ++j) {
    BigInt term = binoms[j];
    for (unsigned i = 0; i < j; ++i) term *= k;
    for (unsigned i = 0; i < repetitions - j; ++i) term *= (unit - k);
    numerator += term;
  }
  return Dyadic(numerator, e * repetitions);
}

WeakStructure bpp_structure_from_tables(const std::map<std::string, AllocationTable>& tables,
                                        size_t prefix) {
  Signature sig;
  sig.add_relation(Signature::kMetric, 2);
  sig.add_relation("A", 1);
  std::vector<std::string> universe;
  for (size_t i = 0; i < prefix; ++i) universe.push_back("n" + std::to_string(i));
  WeakStructure m(sig, universe);
  m.default_metric();
  for (size_t i = 0; i < prefix; ++i) {
    auto it = tables.find(universe[i]);
    if (it == tables.end()) throw DomainError("no table for input " + universe[i]);
    m.set_relation("A", {i}, it->second.accept_mass());
  }
  m.validate();
  return m;
}

WeakStructure bpp_structure_sampled(const SampledMachine& mach, size_t prefix,
                                    std::uint64_t trials, std::uint64_t seed) {
  Signature sig;
  sig.add_relation(Signature::kMetric, 2);
  sig.add_relation("A", 1);
  std::vector<std::string> universe;
  for (size_t i = 0; i < prefix; ++i) universe.push_back("n" + std::to_string(i));
  WeakStructure m(sig, universe);
  m.default_metric();
  // 3-sigma band at the worst-case binomial variance: 2^-b >= 3/(2 sqrt(n)).
  unsigned band_exp = 0;
  while (BigInt(9) * (BigInt(1) << (2 * (band_exp + 1))) <= BigInt(4) * trials) ++band_exp;
  auto stats = std::make_shared<std::map<size_t, SampleStats>>();
  for (size_t i = 0; i < prefix; ++i)
    (*stats)[i] = sample_acceptance(mach, universe[i], trials, seed + i);
  Dyadic band(1, band_exp);
  m.set_relation_interval(
      "A", [stats, trials, band](const std::vector<size_t>& args, unsigned) -> DyadicInterval {
        const SampleStats& st = stats->at(args[0]);
        BigInt scaled_lo = (BigInt(st.accepts) << 32) / trials;
        Dyadic lo_est(scaled_lo, 32), hi_est(scaled_lo + 1, 32);
        return {lo_est.trunc_sub(band), min(Dyadic::one(), hi_est.add(band))};
      });
  return m;
}

SeparationVerdict decide_separated(const WeakStructure& m, const Formula& phi, const Formula& psi,
                                   const Assignment& tuple, const Dyadic& gamma, unsigned trials,
                                   std::uint64_t seed) {
  if (gamma.is_zero()) throw DomainError("separation gamma must be positive");
  if (trials % 2 == 0) throw DomainError("separation vote needs an odd trial count");
  Dyadic va = exact_value(m, phi, tuple);
  Dyadic vb = exact_value(m, psi, tuple);
  // Vote coin: fair bit chooses between sampling the psi -. phi direction
  // and the complement of the phi -. psi direction; acceptance probability
  // is exactly (1 + vb - va)/2.
  unsigned e = std::max(va.exponent(), vb.exponent());
  BigInt a = va.numerator() << (e - va.exponent());
  BigInt b = vb.numerator() << (e - vb.exponent());
  Dyadic coin((BigInt(1) << e) + b - a, e + 1);

  SeededBits src(seed);
  std::uint64_t votes = 0;
  for (unsigned i = 0; i < trials; ++i)
    if (bernoulli(src, coin)) ++votes;
  return {votes > trials / 2, votes, trials, coin};
}

NoDerandomizationMachine::NoDerandomizationMachine(std::map<std::string, unsigned> enumeration)
    : enumerated_at_(std::move(enumeration)) {
  for (const auto& [x, t] : enumerated_at_)
    if (t < 2) throw DomainError("enumeration stages start at 2");
}

AllocationTable NoDerandomizationMachine::table(const std::string& input, unsigned budget) const {
  auto it = enumerated_at_.find(input);
  unsigned enum_stage = it == enumerated_at_.end() ? 0 : it->second;
  AllocationTable t;
  for (unsigned s = 2; s <= budget; ++s) {
    // One accepting and one rejecting cone of length s, leftmost free.
    t.allocate_accept(t.accept_mass().add(Dyadic(1, s)), s, s);
    t.allocate_reject(t.reject_mass().add(Dyadic(1, s)), s, s);
    if (enum_stage == s) {
      // Enumerated: everything still free accepts from now on.
      t.allocate_accept(t.reject_mass().negate(), s, s);
      break;
    }
  }
  return t;
}

Dyadic NoDerandomizationMachine::limit_acceptance(const std::string& input) const {
  auto it = enumerated_at_.find(input);
  if (it == enumerated_at_.end()) return Dyadic(1, 1);
  unsigned t = it->second;
  // 1 - sum_{i=2..t} 2^-i = (2^(t-1) + 1) / 2^t
  return Dyadic((BigInt(1) << (t - 1)) + 1, t);
}

}  // namespace cfl
