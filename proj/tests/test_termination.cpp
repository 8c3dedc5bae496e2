#include "lctrs/termination.hpp"
#include "lctrs/rewriting.hpp"
#include "lctrs/theory.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <functional>

using namespace lctrs;
using lctrs::testing::fixture;

namespace {

SmtSession& session() {
  static SmtSession s;
  return s;
}

const std::string kInts = "(format LCTRS :smtlib 2.6)\n(theory Ints)\n";

Problem ints(const std::string& body) { return preprocess(parse_problem(kInts + body)); }

const std::string kDecrement = "(fun f (-> Int Int))\n(rule (f x) (f (- x 1)) :guard (> x 0))\n";

bool has_line(const Verdict& v, const std::string& needle) {
  return std::any_of(v.proof.begin(), v.proof.end(),
                     [&](const std::string& l) { return l.find(needle) != std::string::npos; });
}

/// All ways to give the variables values from `domain`.
void for_each_assignment(const std::vector<Var>& xs, const std::vector<Value>& domain,
                         const std::function<void(const Subst&)>& f) {
  Subst s;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == xs.size()) {
      f(s);
      return;
    }
    for (const Value& v : domain) {
      s.bind(xs[i], Term::value(v));
      go(i + 1);
    }
  };
  go(0);
}

bool holds(const Term& ground_guard) { return interpret(ground_guard).as_bool(); }

/// Terms reachable in at most `depth` plain steps.
std::vector<Term> reducts(const std::vector<Rule>& rules, const Term& t, int depth) {
  std::vector<Term> all{t};
  std::vector<Term> frontier{t};
  for (int d = 0; d < depth; ++d) {
    std::vector<Term> next;
    for (const Term& u : frontier) {
      for (const Term& w : plain_successors(rules, u)) {
        if (std::find(all.begin(), all.end(), w) == all.end()) {
          all.push_back(w);
          next.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  return all;
}

/// Edges of actual ground chains ρi ρj over integer values in [-2, 2]. All
/// variables of the pairs must be integer guard variables.
std::set<std::pair<std::size_t, std::size_t>> chain_edges(const DPProblem& dp) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  auto domain = lctrs::testing::int_range(-2, 2);
  for (std::size_t i = 0; i < dp.pairs.size(); ++i) {
    const Rule& a = dp.pairs[i];
    VarSet av = vars(a.lhs);
    VarSet gv = vars(a.guard);
    av.insert(gv.begin(), gv.end());
    for_each_assignment(std::vector<Var>(av.begin(), av.end()), domain, [&](const Subst& s) {
      if (!holds(s.apply(a.guard))) return;
      Term rhs = s.apply(a.rhs);
      // rewrite below the root only
      std::vector<std::vector<Term>> arg_reducts;
      for (const Term& u : rhs.args()) arg_reducts.push_back(reducts(dp.rules, u, 4));
      for (std::size_t j = 0; j < dp.pairs.size(); ++j) {
        const Rule& b = dp.pairs[j];
        if (!(b.lhs.symbol() == rhs.symbol())) continue;
        std::function<bool(std::size_t, std::vector<Term>&)> any = [&](std::size_t k, std::vector<Term>& args) {
          if (k == arg_reducts.size()) {
            Term t = Term::app(rhs.symbol_ptr(), args);
            auto m = match(b.lhs, t);
            if (!m) return false;
            VarSet rest = vars(b.guard);
            for (const Var& x : vars(b.lhs)) rest.erase(x);
            bool found = false;
            for_each_assignment(std::vector<Var>(rest.begin(), rest.end()), domain, [&](const Subst& e) {
              Term g = e.apply(m->apply(b.guard));
              if (!found && g.is_ground() && g.is_logical() && holds(g)) found = true;
            });
            return found;
          }
          for (const Term& u : arg_reducts[k]) {
            args.push_back(u);
            bool ok = any(k + 1, args);
            args.pop_back();
            if (ok) return true;
          }
          return false;
        };
        std::vector<Term> args;
        if (any(0, args)) out.insert({i, j});
      }
    });
  }
  return out;
}

}  // namespace

TEST_CASE("dependency pairs") {
  DPProblem dp = compute_dps(ints(kDecrement));
  REQUIRE(dp.pairs.size() == 1);
  const Rule& p = dp.pairs[0];
  CHECK(p.lhs.symbol().name == "f#");
  CHECK(is_marked(p.lhs.symbol()));
  CHECK(p.lhs.symbol().result == marked_sort());
  REQUIRE(p.rhs.arg(0).is_var());
  Var y = p.rhs.arg(0).as_var();
  Var x = p.lhs.arg(0).as_var();
  auto parts = conjuncts(p.guard);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].to_string() == "(> x 0)");
  CHECK(parts[1] == mk_eq(Term::var(y), int_op("-", {Term::var(x), mk_int(1)})));

  DPProblem none = compute_dps(ints("(fun f (-> Int Int))\n(fun c (-> Int Int))\n(rule (f x) (c x))\n"));
  CHECK(none.pairs.empty());

  DPProblem fig3 = compute_dps(preprocess(parse_problem(fixture("fig3.ari"))));
  int self = 0;
  for (const Rule& q : fig3.pairs) {
    if (q.lhs.symbol().name == "u1#" && q.rhs.symbol().name == "u1#") {
      ++self;
      CHECK(q.guard.to_string().find("bvult") != std::string::npos);
    }
  }
  CHECK(self == 1);
}

TEST_CASE("calculation flattening keeps non-logical subterms") {
  Problem p = ints("(fun f (-> Int Int Int))\n(rule (f x z) (f (+ x 1) (+ z 1)) :guard (> x 0))\n");
  Rule r = flatten_calculations(p.rules[0]);
  CHECK(r.rhs.arg(0).is_var());
  CHECK(r.rhs.arg(1).to_string() == "(+ z 1)");
  CHECK(conjuncts(r.guard).size() == 2);
}

TEST_CASE("dependency graph") {
  SmtSession& smt = session();
  DPProblem dec = compute_dps(ints(kDecrement));
  DPGraph g = dp_graph(dec, smt);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0] == std::make_pair(std::size_t{0}, std::size_t{0}));
  CHECK(dependency_graph(dec, smt).size() == 1);
  CHECK(g.to_sexp().find("(edge 0 0)") != std::string::npos);

  DPProblem unsat = compute_dps(ints("(fun f (-> Int Int))\n(fun g (-> Int Int))\n"
                                       "(rule (f x) (g x) :guard (> x 0))\n(rule (g y) (f y) :guard (< y (- 5)))\n"));
  REQUIRE(unsat.pairs.size() == 2);
  CHECK(dp_graph(unsat, smt).edges.empty());
  CHECK(dependency_graph(unsat, smt).empty());

  DPProblem heads = compute_dps(ints("(fun f (-> Int Int))\n(fun g (-> Int Int))\n(fun h (-> Int Int))\n"
                                       "(rule (f x) (g x))\n(rule (g x) (h x))\n"));
  CHECK(dependency_graph(heads, smt).empty());
}

TEST_CASE("dependency graph covers ground chains") {
  const std::vector<std::string> bodies = {
      kDecrement,
      "(fun f (-> Int Int))\n(fun g (-> Int Int))\n"
      "(rule (f x) (g (+ x 1)) :guard (< x 2))\n(rule (g x) (f x) :guard (> x 0))\n",
      "(fun f (-> Int Int Int))\n(rule (f x y) (f y x) :guard (> x y))\n(rule (f x y) (f (- x 1) y) :guard (> x 0))\n",
      "(fun f (-> Int Int))\n(fun g (-> Int Int))\n"
      "(rule (f x) (f (g x)) :guard (> x 0))\n(rule (g x) (- x 1))\n",
  };
  for (const std::string& body : bodies) {
    CAPTURE(body);
    DPProblem dp = compute_dps(ints(body));
    DPGraph g = dp_graph(dp, session());
    std::set<std::pair<std::size_t, std::size_t>> edges(g.edges.begin(), g.edges.end());
    auto chains = chain_edges(dp);
    CHECK_FALSE(chains.empty());
    for (auto e : chains) {
      CAPTURE(e.first, e.second);
      CHECK(edges.count(e));
    }
  }
}

TEST_CASE("recursive path order") {
  auto prec = rpo_prove(preprocess(parse_problem(fixture("example3.ari"))).rules, session());
  REQUIRE(prec);
  CHECK(prec->to_string() == "f > g > h > a > b > c");

  CHECK_FALSE(rpo_prove(ints("(fun f (-> Int Int))\n(rule (f x) (f x))\n").rules, session()));
  CHECK_FALSE(rpo_prove(ints(kDecrement).rules, session()));
  // a precedence against the order of occurrence
  auto rev = rpo_prove(ints("(fun a Int)\n(fun b Int)\n(rule a 1)\n(rule b a)\n").rules, session());
  REQUIRE(rev);
  CHECK(rev->to_string() == "b > a");
}

TEST_CASE("subterm criterion") {
  DPProblem dp = compute_dps(ints("(fun s (-> Int Int))\n(fun g (-> Int Int))\n(rule (g (s x)) (g x))\n"));
  REQUIRE(dp.pairs.size() == 1);
  auto r = subterm_criterion(dp, session());
  REQUIRE(r);
  CHECK(r->removed.size() == 1);
  CHECK(r->remaining.pairs.empty());
  CHECK(r->projection->index.at("g#/1") == 0);

  CHECK_FALSE(subterm_criterion(compute_dps(ints(kDecrement)), session()));

  DPProblem empty;
  auto e = subterm_criterion(empty, session());
  REQUIRE(e);
  CHECK(e->remaining.pairs.empty());
}

TEST_CASE("value criterion") {
  SmtSession& smt = session();
  DPProblem dec = compute_dps(ints(kDecrement));
  auto r = value_criterion(dec, smt);
  REQUIRE(r);
  CHECK(r->removed.size() == 1);

  // a pair that only decreases weakly stays
  DPProblem both = dec;
  Rule same = both.pairs[0];
  same.rhs = Term::app(same.rhs.symbol_ptr(), {same.lhs.arg(0)});
  same.guard = mk_true();
  both.pairs.push_back(same);
  auto w = value_criterion(both, smt);
  REQUIRE(w);
  REQUIRE(w->remaining.pairs.size() == 1);
  CHECK(w->remaining.pairs[0] == same);
  DPProblem only_weak;
  only_weak.pairs = {same};
  CHECK_FALSE(value_criterion(only_weak, smt));

  // independent re-check of every removed pair
  SmtSession fresh;
  for (const Rule& p : r->removed) {
    unsigned i = r->projection->index.at(p.lhs.symbol().name + "/1");
    unsigned j = r->projection->index.at(p.rhs.symbol().name + "/1");
    Term goal = mk_and(int_op(">", {p.lhs.arg(i), p.rhs.arg(j)}), int_op(">=", {p.lhs.arg(i), mk_int(0)}));
    CHECK(fresh.check_valid(mk_implies(p.guard, goal)).result == Validity::Valid);
  }

  CHECK_FALSE(value_criterion(compute_dps(preprocess(parse_problem(fixture("fig4.ari")))), smt));
}

TEST_CASE("special value criterion") {
  SmtSession& smt = session();
  DPProblem dp =
      compute_dps(ints("(fun u (-> Int Int Int Int))\n(rule (u x i z) (u x (+ i 1) (+ z 1)) :guard (< i x))\n"));
  REQUIRE(dp.pairs.size() == 1);
  CHECK_FALSE(value_criterion(dp, smt));
  auto r = special_value_criterion(dp, smt);
  REQUIRE(r);
  const std::vector<int>& c = r->projection->coefficients.at("u#/3");
  REQUIRE(c.size() == 3);
  CHECK(c[2] == 0);  // z is not a guard variable
  CHECK(c[0] + c[1] == 0);
  CHECK(c[0] > 0);

  // unit coefficients cover the value criterion
  for (const std::string& body : {kDecrement, std::string("(fun f (-> Int Int Int))\n"
                                                          "(rule (f x y) (f (- x 1) y) :guard (> x 0))\n")}) {
    DPProblem d = compute_dps(ints(body));
    if (value_criterion(d, smt)) CHECK(special_value_criterion(d, smt));
  }
  CHECK_FALSE(special_value_criterion(compute_dps(preprocess(parse_problem(fixture("fig3.ari")))), smt));
}

TEST_CASE("reduction pairs alternate methods") {
  Problem p = ints("(fun s (-> Int Int))\n(fun f (-> Int Int Int))\n"
                     "(rule (f (s x) n) (f x n))\n(rule (f x n) (f x m) :guard (and (> n 0) (= m (- n 1))))\n");
  TerminationOptions opt;
  opt.direct_rpo = false;
  Verdict v = prove_termination(p, session(), opt);
  CHECK(v.answer == Answer::Yes);
  CHECK(has_line(v, "subterm criterion removes"));
  CHECK(has_line(v, "value criterion removes"));

  DPProblem dp = compute_dps(p);
  auto first = reduction_pairs(dependency_graph(dp, session()).at(0), session(), opt, nullptr);
  REQUIRE(first);
  REQUIRE(first->size() == 1);
  CHECK(first->at(0).pairs.size() == 1);
}

TEST_CASE("prove termination") {
  SmtSession& smt = session();
  Verdict ex3 = prove_termination(preprocess(parse_problem(fixture("example3.ari"))), smt);
  CHECK(ex3.answer == Answer::Yes);
  CHECK(has_line(ex3, "f > g > h > a > b > c"));

  Problem dec = ints(kDecrement);
  Verdict full = prove_termination(dec, smt);
  CHECK(full.answer == Answer::Yes);
  CHECK(has_line(full, "value criterion"));
  TerminationOptions sc;
  sc.direct_rpo = false;
  sc.methods = {"subterm"};
  CHECK(prove_termination(dec, smt, sc).answer == Answer::Maybe);

  CHECK(prove_termination(preprocess(parse_problem(fixture("fig3.ari"))), smt).answer == Answer::Maybe);
  CHECK(prove_termination(preprocess(parse_problem(fixture("fig4.ari"))), smt).answer == Answer::Maybe);
  CHECK(prove_termination(ints("(fun f (-> Int Int))\n(rule (f x) (f x))\n"), smt).answer == Answer::Maybe);

  Problem up = ints("(fun f (-> Int Int))\n(rule (f x) (f (+ x 1)) :guard (< x 10))\n");
  CHECK(prove_termination(up, smt).answer == Answer::Maybe);
}
