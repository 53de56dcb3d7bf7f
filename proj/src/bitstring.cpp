#include "cfl/bitstring.hpp"

#include "cfl/errors.hpp"

namespace cfl {

BitString BitString::parse(std::string_view text) {
  if (text == "e") return {};
  BitString out;
  for (char c : text) {
    if (c != '0' && c != '1') throw DomainError("bad bit string: " + std::string(text));
    out.bits = (out.bits << 1) | static_cast<std::uint64_t>(c - '0');
    ++out.len;
  }
  if (out.len > 63) throw DomainError("bit string too long");
  return out;
}

std::string BitString::str() const {
  if (len == 0) return "e";
  std::string out;
  for (unsigned i = len; i-- > 0;) out += static_cast<char>('0' + ((bits >> i) & 1));
  return out;
}

BitString nth_string(std::uint64_t index) {
  // Heap indexing: the binary expansion of index+1 minus its leading 1 bit.
  std::uint64_t v = index + 1;
  unsigned level = 0;
  while ((std::uint64_t(1) << (level + 1)) <= v) ++level;
  return {level, v - (std::uint64_t(1) << level)};
}

std::uint64_t string_index(const BitString& s) {
  return (std::uint64_t(1) << s.len) + s.bits - 1;
}

Dyadic mass(const std::vector<BitString>& set) {
  for (size_t i = 0; i < set.size(); ++i)
    for (size_t j = i + 1; j < set.size(); ++j)
      if (set[i].comparable(set[j]))
        throw DomainError("mass undefined: " + set[i].str() + " and " + set[j].str() +
                          " are prefix-comparable");
  Dyadic total;
  for (const BitString& s : set) total = total.add(s.measure());
  return total;
}

}  // namespace cfl
