#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cfl/dyadic.hpp"

using namespace cfl;

TEST_CASE("truncated subtraction on the spec examples") {
  CHECK(Dyadic(3, 2).trunc_sub(Dyadic(1, 1)) == Dyadic(1, 2));
  CHECK(Dyadic(1, 1).trunc_sub(Dyadic(3, 2)) == Dyadic::zero());
  CHECK(Dyadic::one().trunc_sub(Dyadic::zero()) == Dyadic::one());
}

TEST_CASE("negate and halve") {
  CHECK(Dyadic::zero().negate() == Dyadic::one());
  CHECK(Dyadic(3, 3).negate() == Dyadic(5, 3));
  CHECK(Dyadic::one().negate() == Dyadic::zero());
  CHECK(Dyadic::one().halve() == Dyadic(1, 1));
  CHECK(Dyadic(1, 2).halve() == Dyadic(1, 3));
  CHECK(Dyadic::zero().halve() == Dyadic::zero());
}

TEST_CASE("canonical form") {
  CHECK(Dyadic(2, 2) == Dyadic(1, 1));
  CHECK(Dyadic(4, 4) == Dyadic(1, 2));
  CHECK(Dyadic(0, 7) == Dyadic::zero());
  CHECK(Dyadic(8, 3) == Dyadic::one());
  CHECK(Dyadic(6, 3).numerator() == 3);
  CHECK(Dyadic(6, 3).exponent() == 2);
  CHECK_THROWS_AS(Dyadic(5, 2), DomainError);
}

TEST_CASE("render and parse round-trip") {
  for (const Dyadic& d : dyadic_grid(5)) CHECK(Dyadic::parse(d.str()) == d);
  CHECK(Dyadic::parse("3/2^2") == Dyadic(3, 2));
  CHECK_THROWS_AS(Dyadic::parse("0.5"), ParseError);
  CHECK_THROWS_AS(Dyadic::parse("5/2^2"), DomainError);
}

TEST_CASE("exhaustive laws at exponent <= 8") {
  auto grid = dyadic_grid(8);
  for (const Dyadic& a : grid) {
    CHECK(a.negate().negate() == a);
    CHECK(a.halve() <= a);
    for (const Dyadic& b : grid) {
      Dyadic s = a.trunc_sub(b);
      CHECK(s <= a);
      CHECK(s.add(b) >= a);
      CHECK(s <= Dyadic::one());
    }
  }
}

TEST_CASE("floor and ceil to a coarser grid") {
  Dyadic v(3, 3);  // 3/8
  CHECK(v.floor_to(2) == Dyadic(1, 2));
  CHECK(v.ceil_to(2) == Dyadic(1, 1));
  CHECK(v.floor_to(3) == v);
  CHECK(v.ceil_to(3) == v);
  CHECK(v.floor_to(0) == Dyadic::zero());
  CHECK(v.ceil_to(0) == Dyadic::one());
}

TEST_CASE("interval ops on the spec examples") {
  DyadicInterval half{Dyadic(1, 1)};
  DyadicInterval quarter{Dyadic(1, 2)};
  CHECK(half.trunc_sub(quarter) == DyadicInterval(Dyadic(1, 2)));
  DyadicInterval iv(Dyadic(1, 2), Dyadic(1, 1));
  CHECK(iv.negate() == DyadicInterval(Dyadic(1, 1), Dyadic(3, 2)));
  DyadicInterval full(Dyadic::zero(), Dyadic::one());
  CHECK(full.trunc_sub(full) == full);
}

TEST_CASE("interval extension is conservative on random samples") {
  std::mt19937_64 rng(20240811);
  auto rand_dyadic = [&](unsigned exp) {
    std::uniform_int_distribution<uint64_t> d(0, 1ull << exp);
    return Dyadic(d(rng), exp);
  };
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    Dyadic a = rand_dyadic(6), b = rand_dyadic(6), c = rand_dyadic(6), d = rand_dyadic(6);
    DyadicInterval x(min(a, b), max(a, b)), y(min(c, d), max(c, d));
    // points inside the intervals
    Dyadic px = min(a, b).add(max(a, b).trunc_sub(min(a, b)).halve());
    Dyadic py = min(c, d).add(max(c, d).trunc_sub(min(c, d)).halve());
    CHECK(x.trunc_sub(y).contains(px.trunc_sub(py)));
    CHECK(x.negate().contains(px.negate()));
    CHECK(x.halve().contains(px.halve()));
    CHECK(x.min_with(y).contains(min(px, py)));
    CHECK(x.max_with(y).contains(max(px, py)));
    Dyadic ts_width = x.trunc_sub(y).width();
    CHECK(ts_width.trunc_sub(x.width()) <= y.width());  // width <= sum of widths
    ++checked;
  }
  CHECK(checked == 10000);
}
