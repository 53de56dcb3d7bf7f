#include "cfl/dyadic.hpp"

#include <charconv>

namespace cfl {

namespace {

// Lines both numerators up on the common exponent.
void align(const Dyadic& a, const Dyadic& b, BigInt& na, BigInt& nb, unsigned& e) {
  e = std::max(a.exponent(), b.exponent());
  na = a.numerator() << (e - a.exponent());
  nb = b.numerator() << (e - b.exponent());
}

}  // namespace

void Dyadic::canonicalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  while (exp_ > 0 && (num_ & 1) == 0) {
    num_ >>= 1;
    --exp_;
  }
}

Dyadic::Dyadic(BigInt numerator, unsigned exponent) : num_(std::move(numerator)), exp_(exponent) {
  if (num_ < 0 || num_ > (BigInt(1) << exp_))
    throw DomainError("dyadic out of [0,1]: " + num_.str() + "/2^" + std::to_string(exp_));
  canonicalize();
}

Dyadic Dyadic::trunc_sub(const Dyadic& b) const {
  BigInt na, nb;
  unsigned e;
  align(*this, b, na, nb, e);
  return na <= nb ? Dyadic() : Dyadic(na - nb, e);
}

Dyadic Dyadic::negate() const { return Dyadic((BigInt(1) << exp_) - num_, exp_); }

Dyadic Dyadic::halve() const { return num_ == 0 ? Dyadic() : Dyadic(num_, exp_ + 1); }

Dyadic Dyadic::add(const Dyadic& b) const {
  BigInt na, nb;
  unsigned e;
  align(*this, b, na, nb, e);
  BigInt sum = na + nb;
  if (sum > (BigInt(1) << e))
    throw DomainError("dyadic sum exceeds 1: " + str() + " + " + b.str());
  return Dyadic(sum, e);
}

Dyadic Dyadic::abs_diff(const Dyadic& b) const {
  return *this >= b ? trunc_sub(b) : b.trunc_sub(*this);
}

Dyadic Dyadic::mul(const Dyadic& b) const { return Dyadic(num_ * b.num_, exp_ + b.exp_); }

Dyadic Dyadic::pow(unsigned k) const {
  Dyadic acc = one();
  for (unsigned i = 0; i < k; ++i) acc = acc.mul(*this);
  return acc;
}

Dyadic Dyadic::floor_to(unsigned n) const {
  if (exp_ <= n) return *this;
  return Dyadic(num_ >> (exp_ - n), n);
}

Dyadic Dyadic::ceil_to(unsigned n) const {
  if (exp_ <= n) return *this;
  BigInt shifted = num_ >> (exp_ - n);
  return Dyadic(shifted + 1, n);  // num_ is odd in canonical form, so truncation was strict
}

std::strong_ordering Dyadic::operator<=>(const Dyadic& b) const {
  BigInt na, nb;
  unsigned e;
  align(*this, b, na, nb, e);
  if (na < nb) return std::strong_ordering::less;
  if (na > nb) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Dyadic::str() const { return num_.str() + "/2^" + std::to_string(exp_); }

Dyadic Dyadic::parse(std::string_view text) {
  size_t slash = text.find("/2^");
  if (slash == std::string_view::npos)
    throw ParseError("expected dyadic literal k/2^n", 0);
  std::string_view num_part = text.substr(0, slash);
  std::string_view exp_part = text.substr(slash + 3);
  if (num_part.empty() || exp_part.empty())
    throw ParseError("malformed dyadic literal", slash);
  for (char c : num_part)
    if (!isdigit(static_cast<unsigned char>(c))) throw ParseError("bad numerator digit", 0);
  unsigned exp = 0;
  auto [p, ec] = std::from_chars(exp_part.data(), exp_part.data() + exp_part.size(), exp);
  if (ec != std::errc() || p != exp_part.data() + exp_part.size())
    throw ParseError("bad exponent", slash + 3);
  return Dyadic(BigInt(std::string(num_part)), exp);
}

std::vector<Dyadic> dyadic_grid(unsigned n) {
  std::vector<Dyadic> grid;
  BigInt top = BigInt(1) << n;
  for (BigInt k = 0; k <= top; ++k) grid.emplace_back(k, n);
  return grid;
}

DyadicInterval::DyadicInterval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw DomainError("interval with lo > hi: [" + lo_.str() + ", " + hi_.str() + "]");
}

DyadicInterval DyadicInterval::trunc_sub(const DyadicInterval& b) const {
  return {lo_.trunc_sub(b.hi_), hi_.trunc_sub(b.lo_)};
}

DyadicInterval DyadicInterval::negate() const { return {hi_.negate(), lo_.negate()}; }

DyadicInterval DyadicInterval::halve() const { return {lo_.halve(), hi_.halve()}; }

DyadicInterval DyadicInterval::min_with(const DyadicInterval& b) const {
  return {min(lo_, b.lo_), min(hi_, b.hi_)};
}

DyadicInterval DyadicInterval::max_with(const DyadicInterval& b) const {
  return {max(lo_, b.lo_), max(hi_, b.hi_)};
}

std::string DyadicInterval::str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

}  // namespace cfl
