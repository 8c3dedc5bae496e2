#include "lctrs/smt.hpp"
#include "lctrs/theory.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace lctrs;

namespace {

const Sort I = Sort::integer();
Term x() { return Term::var(Var{"x", I}); }
Term y() { return Term::var(Var{"y", I}); }
Term op(const std::string& n, std::vector<Term> a) { return int_op(n, a); }

SmtSession& session() {
  static SmtSession s;
  return s;
}

}  // namespace

TEST_CASE("satisfiability with models") {
  Term phi = mk_and({op(">=", {x(), mk_int(1)}), op("<=", {x(), mk_int(2)}), mk_eq(x(), mk_int(1))});
  SatAnswer a = session().check_sat(phi);
  REQUIRE(a.result == SatResult::Sat);
  CHECK(a.model.at(Var{"x", I}) == Value::integer(1));
  CHECK(session().check_sat(mk_and(op(">", {x(), mk_int(0)}), op("<", {x(), mk_int(0)}))).result ==
        SatResult::Unsat);
}

TEST_CASE("models lie in the enumerated solution set") {
  Term phi = mk_and(op(">=", {x(), mk_int(0)}), op("<=", {x(), mk_int(2)}));
  std::vector<long> solutions;
  for (long v = -10; v <= 10; ++v) {
    if (v >= 0 && v <= 2) solutions.push_back(v);
  }
  SatAnswer a = session().check_sat(phi);
  REQUIRE(a.result == SatResult::Sat);
  long got = static_cast<long>(a.model.at(Var{"x", I}).as_int());
  CHECK(std::find(solutions.begin(), solutions.end(), got) != solutions.end());
}

TEST_CASE("validity") {
  CHECK(session().check_valid(mk_implies(mk_and(op(">=", {x(), mk_int(1)}), op("<=", {x(), mk_int(2)})),
                                         op(">=", {x(), mk_int(0)})))
            .result == Validity::Valid);
  Term guard = mk_and({op("<=", {mk_int(1), x()}), op("<=", {x(), mk_int(3)}), op("<=", {mk_int(2), x()}),
                       op("<=", {x(), mk_int(4)})});
  Term merged = mk_or(mk_and(mk_eq(x(), mk_int(2)), mk_eq(mk_int(2), x())),
                      mk_and(mk_eq(x(), mk_int(3)), mk_eq(mk_int(2), mk_int(2))));
  CHECK(session().check_valid(mk_implies(guard, merged)).result == Validity::Valid);
  ValidAnswer v = session().check_valid(op(">=", {x(), y()}));
  REQUIRE(v.result == Validity::Invalid);
  BigInt cx = v.counter_model.at(Var{"x", I}).as_int(), cy = v.counter_model.at(Var{"y", I}).as_int();
  CHECK(cx < cy);
}

TEST_CASE("validity agrees with unsatisfiability of the negation") {
  std::vector<Term> phis = {op(">=", {x(), y()}), mk_or(op(">=", {x(), y()}), op("<", {x(), y()})),
                            op("=", {op("*", {mk_int(2), x()}), mk_int(3)}), mk_eq(op("mod", {x(), mk_int(2)}), mk_int(0))};
  for (const Term& p : phis) {
    bool valid = session().check_valid(p).result == Validity::Valid;
    bool neg_unsat = session().check_sat(mk_not(p)).result == SatResult::Unsat;
    CHECK(valid == neg_unsat);
  }
}

TEST_CASE("finding witnesses for extra variables") {
  Term z = Term::var(Var{"z", I});
  Term phi = mk_and({mk_eq(z, mk_int(2)), op(">=", {z, mk_int(0)}), op(">", {z, y()})});
  auto s = session().find_values(phi, {Var{"y", I}});
  REQUIRE(s);
  CHECK(s->find(Var{"y", I})->symbol().value->as_int() < 2);
  CHECK_FALSE(session().find_values(mk_false(), {Var{"x", I}}));
  auto t = session().find_values(mk_and(mk_eq(x(), mk_int(3)), mk_eq(y(), op("+", {x(), mk_int(1)}))), {Var{"y", I}});
  REQUIRE(t);
  CHECK(*t->find(Var{"y", I}) == mk_int(4));
}

TEST_CASE("non-linear arithmetic is accepted") {
  Term n = Term::var(Var{"n", I}), m = Term::var(Var{"m", I});
  Term phi = mk_and(op(">", {n, mk_int(0)}), mk_eq(op("*", {mk_int(2), m}), n));
  CHECK(session().check_sat(phi).result == SatResult::Sat);
}

TEST_CASE("reals and bit vectors round-trip through models") {
  Term r = Term::var(Var{"r", Sort::real()});
  auto third = Theory::get(TheoryKind::Reals).instantiate("*", {}, {Sort::real(), Sort::real()});
  Term phi = mk_eq(Term::app(third, {mk_int(0).sort().is_int() ? Term::value(Value::real(3)) : r, r}),
                   Term::value(Value::real(1)));
  SatAnswer a = session().check_sat(phi);
  REQUIRE(a.result == SatResult::Sat);
  CHECK(a.model.at(Var{"r", Sort::real()}) == Value::real(Rational(1, 3)));
  Sort b4 = Sort::bitvec(4);
  Term b = Term::var(Var{"b", b4});
  auto add = Theory::get(TheoryKind::BitVectors).instantiate("bvadd", {}, {b4, b4});
  Term bphi = mk_eq(Term::app(add, {b, Term::value(Value::bitvec(BitVec(4, 1)))}), Term::value(Value::bitvec(BitVec(4, 0))));
  SatAnswer c = session().check_sat(bphi);
  REQUIRE(c.result == SatResult::Sat);
  CHECK(c.model.at(Var{"b", b4}) == Value::bitvec(BitVec(4, 15)));
  CHECK(*parse_smt_value("(- (/ 1.0 3.0))", Sort::real()) == Value::real(Rational(-1, 3)));
  CHECK(*parse_smt_value("#x1f", Sort::bitvec(8)) == Value::bitvec(BitVec(8, 31)));
  CHECK(*parse_smt_value("(_ bv3 4)", b4) == Value::bitvec(BitVec(4, 3)));
}

TEST_CASE("answers do not depend on query order") {
  std::vector<Term> qs;
  for (int i = 0; i < 12; ++i) {
    qs.push_back(mk_and(op(">", {x(), mk_int(i)}), op("<", {x(), mk_int(12 - i)})));
  }
  SmtSession fresh;
  std::vector<SatResult> in_order;
  for (const Term& q : qs) in_order.push_back(fresh.check_sat(q).result);
  std::vector<std::size_t> idx(qs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::mt19937 rng(7);
  std::shuffle(idx.begin(), idx.end(), rng);
  SmtSession other;
  for (std::size_t i : idx) CHECK(other.check_sat(qs[i]).result == in_order[i]);
  // integer oracle: x in (i, 12-i) is non-empty iff i + 1 < 12 - i
  for (std::size_t i = 0; i < qs.size(); ++i) {
    bool nonempty = static_cast<int>(i) + 1 < 12 - static_cast<int>(i);
    CHECK((in_order[i] == SatResult::Sat) == nonempty);
  }
}

TEST_CASE("one solver process serves many queries") {
  SmtSession s;
  for (int i = 0; i < 1000; ++i) {
    Term q = mk_eq(x(), mk_int(i));
    REQUIRE(s.check_sat(q).result == SatResult::Sat);
  }
  CHECK(s.spawn_count() == 1);
  CHECK(s.query_count() == 1000);
}

TEST_CASE("cancelling kills the solver") {
  std::size_t before = SmtSession::live_processes();
  {
    SmtSession s;
    s.check_sat(op(">", {x(), mk_int(0)}));
    CHECK(SmtSession::live_processes() == before + 1);
    s.cancel();
    try {
      s.check_sat(op(">", {x(), mk_int(5)}));
      FAIL("expected SolverCrashed");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SolverCrashed);
    }
  }
  CHECK(SmtSession::live_processes() == before);
}

TEST_CASE("a missing solver binary is reported") {
  SmtSession s("/nonexistent/solver");
  try {
    s.check_sat(op(">", {x(), mk_int(0)}));
    FAIL("expected SolverCrashed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SolverCrashed);
  }
}

TEST_CASE("interpretation agrees with the solver on random ground terms") {
  std::mt19937 rng(2024);
  const Theory& ints = Theory::get(TheoryKind::Ints);
  const Theory& bv = Theory::get(TheoryKind::BitVectors);
  const Sort b8 = Sort::bitvec(8);
  std::function<Term(int)> int_term = [&](int depth) -> Term {
    if (depth == 0 || rng() % 3 == 0) return mk_int(static_cast<long>(rng() % 21) - 10);
    static const char* ops[] = {"+", "-", "*", "div", "mod", "abs"};
    std::string o = ops[rng() % 6];
    if (o == "abs") return Term::app(ints.instantiate(o, {}, {I}), {int_term(depth - 1)});
    return Term::app(ints.instantiate(o, {}, {I, I}), {int_term(depth - 1), int_term(depth - 1)});
  };
  std::function<Term(int)> bv_term = [&](int depth) -> Term {
    if (depth == 0 || rng() % 3 == 0) return Term::value(Value::bitvec(BitVec(8, rng() % 256)));
    static const char* ops[] = {"bvadd", "bvsub", "bvmul", "bvudiv", "bvurem", "bvsdiv", "bvsrem", "bvsmod",
                                "bvshl", "bvlshr", "bvashr", "bvand", "bvor", "bvxor", "bvnot", "bvneg"};
    std::string o = ops[rng() % 16];
    if (o == "bvnot" || o == "bvneg") return Term::app(bv.instantiate(o, {}, {b8}), {bv_term(depth - 1)});
    return Term::app(bv.instantiate(o, {}, {b8, b8}), {bv_term(depth - 1), bv_term(depth - 1)});
  };
  // SMT-LIB leaves integer division by zero unspecified, so such terms have
  // no single solver value to compare against.
  std::function<bool(const Term&)> int_zero_divisor = [&](const Term& t) -> bool {
    for (const Term& a : t.args()) {
      if (int_zero_divisor(a)) return true;
    }
    const std::string& n = t.symbol().name;
    return (n == "div" || n == "mod") && interpret(t.arg(1)) == Value::integer(0);
  };
  SmtSession s;
  int failures = 0;
  int checked = 0;
  while (checked < 1000) {
    Term t = checked % 2 ? int_term(3) : bv_term(3);
    if (t.sort().is_int() && int_zero_divisor(t)) continue;
    ++checked;
    Term eq = mk_eq(t, Term::value(interpret(t)));
    if (s.check_valid(eq).result != Validity::Valid) {
      ++failures;
      UNSCOPED_INFO("disagreement on " << t);
    }
  }
  CHECK(failures == 0);
}
