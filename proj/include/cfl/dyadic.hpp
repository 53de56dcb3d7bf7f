#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "cfl/errors.hpp"

namespace cfl {

using BigInt = boost::multiprecision::cpp_int;

/// Exact dyadic rational k/2^n restricted to [0,1]; the truth-value and
/// probability scalar used throughout the library.
///
/// Canonical form: numerator odd, or numerator 0 with exponent 0. All
/// constructors canonicalize, so equality is structural.
class Dyadic {
 public:
  Dyadic() : num_(0), exp_(0) {}
  Dyadic(BigInt numerator, unsigned exponent);

  static Dyadic zero() { return Dyadic(); }
  static Dyadic one() { return Dyadic(1, 0); }
  /// Parses the canonical text form "k/2^n".
  static Dyadic parse(std::string_view text);

  const BigInt& numerator() const { return num_; }
  unsigned exponent() const { return exp_; }
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && exp_ == 0; }

  /// max(a - b, 0), the Lukasiewicz truncated subtraction.
  Dyadic trunc_sub(const Dyadic& b) const;
  /// 1 - a.
  Dyadic negate() const;
  /// a / 2, always exact.
  Dyadic halve() const;
  /// a + b; throws DomainError when the sum exceeds 1.
  Dyadic add(const Dyadic& b) const;
  /// |a - b|.
  Dyadic abs_diff(const Dyadic& b) const;
  /// a * b, exact (stays in [0,1]).
  Dyadic mul(const Dyadic& b) const;
  /// a^k by repeated multiplication.
  Dyadic pow(unsigned k) const;

  /// Largest grid point j/2^n <= a.
  Dyadic floor_to(unsigned n) const;
  /// Smallest grid point j/2^n >= a.
  Dyadic ceil_to(unsigned n) const;

  std::strong_ordering operator<=>(const Dyadic& b) const;
  bool operator==(const Dyadic& b) const { return num_ == b.num_ && exp_ == b.exp_; }

  std::string str() const;

 private:
  BigInt num_;
  unsigned exp_;
  void canonicalize();
};

inline Dyadic min(const Dyadic& a, const Dyadic& b) { return a <= b ? a : b; }
inline Dyadic max(const Dyadic& a, const Dyadic& b) { return a >= b ? a : b; }

/// All dyadics of exponent <= n in increasing order (the k/2^n grid).
std::vector<Dyadic> dyadic_grid(unsigned n);

/// Closed interval [lo, hi] of dyadics; approximates a computable real by
/// nested refinement. The connective extensions below are exact images
/// (every op is monotone coordinatewise), hence conservative.
class DyadicInterval {
 public:
  DyadicInterval() = default;
  explicit DyadicInterval(const Dyadic& point) : lo_(point), hi_(point) {}
  DyadicInterval(Dyadic lo, Dyadic hi);

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }
  bool degenerate() const { return lo_ == hi_; }
  Dyadic width() const { return hi_.trunc_sub(lo_); }
  bool contains(const Dyadic& v) const { return lo_ <= v && v <= hi_; }
  bool contains(const DyadicInterval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }

  DyadicInterval trunc_sub(const DyadicInterval& b) const;
  DyadicInterval negate() const;
  DyadicInterval halve() const;
  DyadicInterval min_with(const DyadicInterval& b) const;
  DyadicInterval max_with(const DyadicInterval& b) const;

  bool operator==(const DyadicInterval& b) const = default;
  std::string str() const;

 private:
  Dyadic lo_, hi_;
};

}  // namespace cfl
