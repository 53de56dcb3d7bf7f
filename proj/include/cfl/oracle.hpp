#pragma once

#include <iosfwd>
#include <memory>

#include "cfl/eval.hpp"
#include "cfl/formula.hpp"

namespace cfl {

/// Decidable-theory oracle: interval queries for the theory value of a
/// sentence, plus a zero test. The zero test is a genuine extra capability
/// (it is not derivable from finitely many interval queries); both must be
/// sound and the intervals nested across increasing precision.
class TheoryOracle {
 public:
  virtual ~TheoryOracle() = default;
  virtual DyadicInterval value_query(const Formula& sentence, unsigned precision) = 0;
  virtual bool zero_test(const Formula& sentence) = 0;
};

/// Oracle for the complete theory of a finite structure with exact dyadic
/// relations: sentence values are computed exactly by the evaluator.
class EvaluatorOracle : public TheoryOracle {
 public:
  explicit EvaluatorOracle(WeakStructure m) : m_(std::move(m)) { m_.validate(); }
  DyadicInterval value_query(const Formula& sentence, unsigned precision) override;
  bool zero_test(const Formula& sentence) override;
  const WeakStructure& structure() const { return m_; }

 private:
  WeakStructure m_;
};

/// Line protocol spoken between the Henkin engine and an external oracle
/// process (one request per line on stdin, one reply per line on stdout):
///
///   VALUE <godel> <n>   ->  VALUE <lo> <hi>      (dyadics "k/2^m")
///   ZERO <godel>        ->  ZERO true | ZERO false
///   QUIT                ->  (exit)
///   anything else       ->  ERR <message>
///
/// Godel codes are decimal integers from godel_number().
void serve_oracle(const WeakStructure& m, std::istream& in, std::ostream& out);

/// Client end: spawns the command and speaks the protocol over pipes.
class ProcessOracle : public TheoryOracle {
 public:
  explicit ProcessOracle(const std::vector<std::string>& argv);
  ~ProcessOracle() override;
  ProcessOracle(const ProcessOracle&) = delete;
  ProcessOracle& operator=(const ProcessOracle&) = delete;

  DyadicInterval value_query(const Formula& sentence, unsigned precision) override;
  bool zero_test(const Formula& sentence) override;

 private:
  int to_child_ = -1;
  int from_child_ = -1;
  long pid_ = -1;
  std::string buffer_;

  std::string request(const std::string& line);
};

}  // namespace cfl
