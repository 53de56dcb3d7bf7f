#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cfl/enumerate.hpp"
#include "cfl/parser.hpp"

using namespace cfl;

namespace {

Signature demo_signature() {
  Signature sig;
  sig.add_relation("d", 2);
  sig.add_relation("P", 1);
  sig.add_relation("Q", 1);
  sig.add_function("c", 0);
  sig.add_function("f", 1);
  return sig;
}

// Random primitive ASTs for round-trip checks.
Formula random_formula(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 5);
  switch (pick(rng)) {
    case 0: {
      std::uniform_int_distribution<int> which(0, 2);
      int w = which(rng);
      if (w == 0) return Formula::atomic("P", {Term::var("x")});
      if (w == 1) return Formula::atomic("Q", {Term::app("f", {Term::constant("c")})});
      return Formula::atomic("d", {Term::var("y"), Term::constant("c")});
    }
    case 1: {
      std::uniform_int_distribution<uint64_t> num(0, 8);
      return Formula::constant(Dyadic(num(rng), 3));
    }
    case 2:
      return Formula::trunc_sub(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 3:
      return Formula::neg(random_formula(rng, depth - 1));
    case 4:
      return Formula::half(random_formula(rng, depth - 1));
    default:
      return Formula::sup(pick(rng) % 2 ? "x" : "y", random_formula(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("parse spec examples") {
  Signature sig = demo_signature();
  Formula f = parse("P(x) -. Q(y)", sig);
  CHECK(f.kind() == FormulaKind::TruncSub);
  CHECK(f.left() == Formula::atomic("P", {Term::var("x")}));
  CHECK(f.right() == Formula::atomic("Q", {Term::var("y")}));

  Formula g = parse("sup x. d(x,c)", sig);
  CHECK(g.kind() == FormulaKind::Sup);
  CHECK(g.bound_var() == "x");
  CHECK(g.body() == Formula::atomic("d", {Term::var("x"), Term::constant("c")}));

  try {
    parse("P(x", sig);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset == 3);
  }
}

TEST_CASE("parser handles the derived forms and literals") {
  Signature sig = demo_signature();
  CHECK(parse("P(x) /\\ Q(x)", sig) ==
        Formula::land(parse("P(x)", sig), parse("Q(x)", sig)));
  CHECK(parse("P(x) \\/ Q(x)", sig) ==
        Formula::lor(parse("P(x)", sig), parse("Q(x)", sig)));
  CHECK(parse("|P(x) - Q(x)|", sig) ==
        Formula::abs_diff(parse("P(x)", sig), parse("Q(x)", sig)));
  CHECK(parse("inf x. P(x)", sig) == Formula::inf("x", parse("P(x)", sig)));
  CHECK(parse("1/2 P(x)", sig) == Formula::half(parse("P(x)", sig)));
  CHECK(parse("1/2^1", sig) == Formula::constant(Dyadic(1, 1)));
  CHECK(parse("3/2^2 -. 1/2 3/2^2", sig).str() == "3/2^2 -. 1/2 3/2^2");
  // -. is left-associative
  CHECK(parse("P(x) -. Q(x) -. P(x)", sig) ==
        Formula::trunc_sub(parse("P(x) -. Q(x)", sig), parse("P(x)", sig)));
}

TEST_CASE("substitution follows the capture rules") {
  Signature sig = demo_signature();
  Formula p = parse("P(x)", sig);
  CHECK(p.substitute(Term::constant("c"), "x") == parse("P(c)", sig));

  Formula closed = parse("sup x. P(x)", sig);
  CHECK(closed.substitute(Term::constant("c"), "x") == closed);

  Formula trap = parse("sup y. d(x,y)", sig);
  CHECK_THROWS_AS(trap.substitute(Term::var("y"), "x"), CaptureViolation);
}

TEST_CASE("free variables after substituting a constant") {
  Signature sig = demo_signature();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, 6);
    auto before = f.free_vars();
    Formula g = f.substitute(Term::constant("c"), "x");
    auto after = g.free_vars();
    auto expect = before;
    expect.erase("x");
    CHECK(after == expect);
  }
}

TEST_CASE("parse inverts render on random ASTs") {
  Signature sig = demo_signature();
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    Formula f = random_formula(rng, 5);
    CHECK(parse(f.str(), sig) == f);
  }
}

TEST_CASE("sentence enumeration is monotone and exhaustive by weight") {
  Signature sig = demo_signature();
  auto s5 = enumerate_sentences(sig, 5);
  auto s6 = enumerate_sentences(sig, 6);
  REQUIRE(s5.size() <= s6.size());
  for (size_t i = 0; i < s5.size(); ++i) CHECK(s5[i] == s6[i]);
  CHECK(!s6.empty());

  // Surjectivity contract on concrete sentences.
  Formula pc = parse("P(c)", sig);
  Formula sup_p = parse("sup x0. P(x0)", sig);
  bool found_pc = false, found_sup = false;
  auto s8 = enumerate_sentences(sig, 8);
  for (const auto& f : s8) {
    found_pc |= f == pc;
    found_sup |= f == sup_p;
  }
  CHECK(found_pc);
  CHECK(found_sup);

  // Everything enumerated is closed.
  for (const auto& f : s6) CHECK(f.is_sentence());
}

TEST_CASE("godel numbering round-trips") {
  Signature sig = demo_signature();
  for (const auto& f : enumerate_sentences(sig, 6)) {
    CHECK(godel_decode(godel_number(f), sig) == f);
  }
}

TEST_CASE("derived connective shapes") {
  Formula a = Formula::atomic("P"), b = Formula::atomic("Q");
  CHECK(Formula::land(a, b) == Formula::trunc_sub(a, Formula::trunc_sub(a, b)));
  CHECK(Formula::inf("x", a) == Formula::neg(Formula::sup("x", Formula::neg(a))));
}
