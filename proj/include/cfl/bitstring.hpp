#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfl/dyadic.hpp"

namespace cfl {

/// Finite binary string, at most 63 bits. Identified with the dyadic cone
/// [value/2^len, (value+1)/2^len) of infinite sequences extending it.
struct BitString {
  unsigned len = 0;
  std::uint64_t bits = 0;  // big-endian within the low `len` bits

  static BitString empty() { return {}; }
  static BitString parse(std::string_view text);

  bool is_prefix_of(const BitString& b) const {
    return len <= b.len && (b.bits >> (b.len - len)) == bits;
  }
  bool comparable(const BitString& b) const {
    return is_prefix_of(b) || b.is_prefix_of(*this);
  }
  Dyadic measure() const { return Dyadic(1, len); }

  /// Cone endpoints as dyadics: [lo, lo + 2^-len).
  Dyadic cone_lo() const { return Dyadic(bits, len); }

  bool operator==(const BitString& b) const = default;
  /// Length-lexicographic order (the effective enumeration order).
  bool operator<(const BitString& b) const {
    return len != b.len ? len < b.len : bits < b.bits;
  }

  std::string str() const;  // "e" for the empty string
};

/// The effective list of all strings in length-lex order:
/// e, 0, 1, 00, 01, 10, 11, 000, ...
BitString nth_string(std::uint64_t index);
std::uint64_t string_index(const BitString& s);

/// Exact mass P(S) = sum of 2^-len over the set. Throws DomainError when
/// two members are prefix-comparable (the sum would not be a cone measure).
Dyadic mass(const std::vector<BitString>& set);

}  // namespace cfl
