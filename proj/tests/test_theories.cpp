#include "lctrs/theory.hpp"

#include <catch_amalgamated.hpp>

using namespace lctrs;

namespace {

Value eval(TheoryKind k, const std::string& op, std::vector<Value> args, std::vector<unsigned> idx = {}) {
  std::vector<Sort> sorts;
  std::vector<Term> ts;
  for (const Value& v : args) {
    sorts.push_back(v.sort());
    ts.push_back(Term::value(v));
  }
  return interpret(Term::app(Theory::get(k).instantiate(op, idx, sorts), ts));
}

Value I(long n) { return Value::integer(n); }
Value B(unsigned w, long n) { return Value::bitvec(BitVec(w, n)); }

}  // namespace

TEST_CASE("integer arithmetic") {
  CHECK(eval(TheoryKind::Ints, "+", {I(3), I(2)}) == I(5));
  CHECK(eval(TheoryKind::Ints, "-", {I(3)}) == I(-3));
  CHECK(eval(TheoryKind::Ints, "<=", {I(1), I(2), I(2)}) == Value::boolean(true));
  CHECK(eval(TheoryKind::Ints, "<", {I(1), I(2), I(2)}) == Value::boolean(false));
}

TEST_CASE("euclidean division agrees with its defining identity") {
  for (long m = -7; m <= 7; ++m) {
    for (long n = -4; n <= 4; ++n) {
      if (n == 0) continue;
      BigInt q = eval(TheoryKind::Ints, "div", {I(m), I(n)}).as_int();
      BigInt r = eval(TheoryKind::Ints, "mod", {I(m), I(n)}).as_int();
      CHECK(q * n + r == m);
      CHECK(r >= 0);
      CHECK(r < (n < 0 ? -n : n));
    }
  }
  CHECK(eval(TheoryKind::Ints, "div", {I(5), I(0)}) == I(0));
  CHECK(eval(TheoryKind::Ints, "mod", {I(5), I(0)}) == I(5));
}

TEST_CASE("reals are exact") {
  Value third = Value::real(Rational(1, 3));
  Value sum = eval(TheoryKind::Reals, "+", {third, third, third});
  CHECK(sum == Value::real(Rational(1)));
  CHECK(eval(TheoryKind::Reals, "/", {Value::real(1), Value::real(0)}) == Value::real(0));
  auto lit = Theory::get(TheoryKind::Reals).parse_literal("2.5");
  REQUIRE(lit);
  CHECK(*lit == Value::real(Rational(5, 2)));
}

TEST_CASE("bit-vector semantics") {
  CHECK(eval(TheoryKind::BitVectors, "bvadd", {B(4, 1), B(4, 1)}) == B(4, 2));
  CHECK(eval(TheoryKind::BitVectors, "bvadd", {B(4, 15), B(4, 1)}) == B(4, 0));
  CHECK(eval(TheoryKind::BitVectors, "bvudiv", {B(4, 5), B(4, 0)}) == B(4, 15));
  CHECK(eval(TheoryKind::BitVectors, "bvurem", {B(4, 5), B(4, 0)}) == B(4, 5));
  CHECK(eval(TheoryKind::BitVectors, "bvslt", {B(4, 15), B(4, 0)}) == Value::boolean(true));
  CHECK(eval(TheoryKind::BitVectors, "bvult", {B(4, 15), B(4, 0)}) == Value::boolean(false));
  CHECK(eval(TheoryKind::BitVectors, "concat", {B(2, 1), B(2, 2)}) == B(4, 6));
  CHECK(eval(TheoryKind::BitVectors, "extract", {B(4, 6)}, {2, 1}) == B(2, 3));
  CHECK(eval(TheoryKind::BitVectors, "sign_extend", {B(2, 2)}, {2}) == B(4, 14));
  CHECK(eval(TheoryKind::BitVectors, "bvashr", {B(4, 8), B(4, 1)}) == B(4, 12));
  CHECK(eval(TheoryKind::BitVectors, "rotate_left", {B(4, 9)}, {1}) == B(4, 3));
  auto lit = Theory::get(TheoryKind::BitVectors).parse_literal("#b0001");
  REQUIRE(lit);
  CHECK(*lit == B(4, 1));
  CHECK(Theory::get(TheoryKind::BitVectors).parse_literal("#xff")->as_bitvec().width == 8);
}

TEST_CASE("signed bit-vector division matches truncating integer division") {
  for (long s = -8; s < 8; ++s) {
    for (long t = -8; t < 8; ++t) {
      if (t == 0) continue;
      BigInt q = eval(TheoryKind::BitVectors, "bvsdiv", {B(4, s), B(4, t)}).as_bitvec().as_signed();
      BigInt r = eval(TheoryKind::BitVectors, "bvsrem", {B(4, s), B(4, t)}).as_bitvec().as_signed();
      long eq = s / t;
      if (eq == 8) eq = -8;  // -8 / -1 overflows
      CHECK(q == eq);
      CHECK(r == s % t);
      BigInt m = eval(TheoryKind::BitVectors, "bvsmod", {B(4, s), B(4, t)}).as_bitvec().as_signed();
      CHECK((m == 0 || (m < 0) == (t < 0)));
      CHECK(((s - m) % t) == 0);
    }
  }
}

TEST_CASE("symbol availability and sort checks") {
  const Theory& ints = Theory::get(TheoryKind::Ints);
  CHECK(ints.has_symbol("div"));
  CHECK_FALSE(ints.has_symbol("/"));
  CHECK_FALSE(ints.has_symbol("bvadd"));
  CHECK(Theory::get(TheoryKind::Reals).has_symbol("/"));
  CHECK_THROWS_AS(ints.instantiate("+", {}, {Sort::integer(), Sort::boolean()}), Error);
  CHECK_FALSE(Theory::from_name("Strings"));
  CHECK(*Theory::from_name("Reals_Ints") == TheoryKind::IntsReals);
}

TEST_CASE("interpreting a non-ground term is an error") {
  auto plus = Theory::get(TheoryKind::Ints).instantiate("+", {}, {Sort::integer(), Sort::integer()});
  Term t = Term::app(plus, {Term::var(Var{"x", Sort::integer()}), mk_int(1)});
  try {
    interpret(t);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotGroundLogical);
  }
}
