#include "lctrs/rule.hpp"
#include "lctrs/theory.hpp"

#include <catch_amalgamated.hpp>

using namespace lctrs;

namespace {

const Sort S{"S", 0};
const Sort I = Sort::integer();

SymbolPtr sym(const std::string& n, std::size_t arity, Sort res = S, Sort arg = S) {
  return make_symbol(n, std::vector<Sort>(arity, arg), res);
}
Term v(const std::string& n, Sort s = S) { return Term::var(Var{n, s}); }

}  // namespace

TEST_CASE("positions, subterms and replacement") {
  auto f = sym("f", 2), g = sym("g", 1), a = sym("a", 0);
  Term t = Term::app(f, {Term::app(g, {Term::app(a)}), v("x")});
  CHECK(subterm_at(t, {}) == t);
  CHECK(subterm_at(t, {1, 1}) == Term::app(a));
  CHECK(subterm_at(t, {2}) == v("x"));
  CHECK_THROWS_AS(subterm_at(t, {3}), Error);
  try {
    subterm_at(t, {1, 1, 1});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PositionOutOfRange);
  }
  Term r = replace_at(t, {1}, v("y"));
  CHECK(r == Term::app(f, {v("y"), v("x")}));
  CHECK_THROWS_AS(replace_at(t, {1}, v("n", I)), Error);
  CHECK(positions(t).size() == 4);
  CHECK(fun_positions(t).size() == 3);
  CHECK(to_string(Position{}) == "e");
  CHECK(parallel({1}, {2}));
  CHECK_FALSE(parallel({1}, {1, 2}));
}

TEST_CASE("sort and arity checks on application") {
  auto f = sym("f", 2);
  CHECK_THROWS_AS(Term::app(f, {v("x")}), Error);
  CHECK_THROWS_AS(Term::app(f, {v("x"), v("n", I)}), Error);
}

TEST_CASE("matching") {
  auto f = sym("f", 2), g = sym("g", 1);
  Term pat = Term::app(f, {v("x"), Term::app(g, {v("y")})});
  Term sub = Term::app(f, {Term::app(g, {v("z")}), Term::app(g, {v("z")})});
  auto s = match(pat, sub);
  REQUIRE(s);
  CHECK(s->apply(pat) == sub);
  CHECK(s->domain() == VarSet{Var{"x", S}, Var{"y", S}});
  Term nonlin = Term::app(f, {v("x"), v("x")});
  CHECK_FALSE(match(nonlin, Term::app(f, {v("y"), v("z")})));
  CHECK(match(nonlin, Term::app(f, {v("y"), v("y")})));
}

TEST_CASE("unification") {
  auto f = sym("f", 2), g = sym("g", 1);
  Term s = Term::app(f, {v("x"), Term::app(g, {v("x")})});
  Term t = Term::app(f, {Term::app(g, {v("y")}), v("z")});
  auto u = unify(s, t);
  REQUIRE(u);
  CHECK(u->apply(s) == u->apply(t));
  // occurs check
  CHECK_FALSE(unify(v("x"), Term::app(g, {v("x")})));
  // idempotence
  for (const auto& [x, rhs] : u->bindings()) CHECK(u->apply(rhs) == rhs);
}

TEST_CASE("value-restricted unification") {
  auto h = make_symbol("h", {I}, S);
  auto plus = Theory::get(TheoryKind::Ints).instantiate("+", {}, {I, I});
  Term n = v("n", I);
  Term sum = Term::app(plus, {v("m", I), mk_int(1)});
  CHECK(unify(Term::app(h, {n}), Term::app(h, {sum})));
  CHECK_FALSE(unify(Term::app(h, {n}), Term::app(h, {sum}), {Var{"n", I}}));
  CHECK(unify(Term::app(h, {n}), Term::app(h, {mk_int(3)}), {Var{"n", I}}));
}

TEST_CASE("rule variable classes") {
  auto f = make_symbol("f", {I}, I);
  Var x{"x", I}, y{"y", I}, z{"z", I};
  Term gt = int_op(">", {Term::var(x), Term::var(y)});
  Rule r(Term::app(f, {Term::var(x)}), int_op("+", {Term::var(y), Term::var(z)}), gt);
  CHECK(r.logical_vars() == VarSet{x, y, z});
  CHECK(r.extra_vars() == VarSet{z});
  Rule r2 = rename_fresh(r);
  CHECK(is_variant(r, r2));
  for (const Var& w : r2.all_vars()) CHECK_FALSE(r.all_vars().count(w));
  Rule calc = calculation_rule(Theory::get(TheoryKind::Ints).instantiate("+", {}, {I, I}));
  CHECK(calc.is_calculation);
  CHECK(calc.logical_vars().size() == 3);
}

TEST_CASE("constraint builders") {
  Term p = int_op(">", {v("x", I), mk_int(0)});
  CHECK(mk_and(mk_true(), p) == p);
  CHECK(mk_and(p, p) == p);
  CHECK(conjuncts(mk_and(p, int_op("<", {v("x", I), mk_int(3)}))).size() == 2);
  CHECK(conjuncts(mk_true()).empty());
}
