#include "lctrs/termination.hpp"

#include <algorithm>
#include <cstdlib>
#include <chrono>
#include <functional>
#include <set>

namespace lctrs {

Sort marked_sort() { return Sort{"DP#", 0}; }

SymbolPtr marked(const SymbolPtr& f) { return make_symbol(f->name + "#", f->arg_sorts, marked_sort()); }

bool is_marked(const FunSym& f) { return f.result == marked_sort(); }

namespace {

Term mark(const Term& t) {
  std::vector<Term> args(t.args().begin(), t.args().end());
  return Term::app(marked(t.symbol_ptr()), std::move(args));
}

bool subset(const VarSet& a, const VarSet& b) {
  return std::all_of(a.begin(), a.end(), [&](const Var& x) { return b.count(x) != 0; });
}

/// A logical term whose variables are instantiated by values in every step.
bool bound_in(const Term& t, const VarSet& logical) { return t.is_logical() && subset(vars(t), logical); }

std::string key(const FunSym& f) { return f.name + "/" + std::to_string(f.arity()); }

long to_long(const std::string& text) {
  auto v = parse_smt_value(text, Sort::integer());
  if (!v) throw Error(ErrorKind::SolverCrashed, "unexpected model value " + text);
  return v->as_int().convert_to<long>();
}

// Formula text with constant folding for true and false.
const std::string T = "true";
const std::string F = "false";

std::string f_and(const std::vector<std::string>& xs) {
  std::vector<std::string> keep;
  for (const std::string& x : xs) {
    if (x == F) return F;
    if (x != T) keep.push_back(x);
  }
  if (keep.empty()) return T;
  if (keep.size() == 1) return keep[0];
  std::string s = "(and";
  for (const std::string& x : keep) s += " " + x;
  return s + ")";
}

std::string f_or(const std::vector<std::string>& xs) {
  std::vector<std::string> keep;
  for (const std::string& x : xs) {
    if (x == T) return T;
    if (x != F) keep.push_back(x);
  }
  if (keep.empty()) return F;
  if (keep.size() == 1) return keep[0];
  std::string s = "(or";
  for (const std::string& x : keep) s += " " + x;
  return s + ")";
}

/// SMT encoding of the constrained recursive path order. Theory symbols
/// sit below every term symbol and are pairwise incomparable; logical terms
/// over guard variables denote values and lie below everything else.
class RpoEncoder {
 public:
  std::string precedence_var(const FunSym& f) {
    std::string k = key(f);
    auto it = prec_.find(k);
    if (it != prec_.end()) return it->second;
    std::string v = "|prec:" + k + "|";
    prec_[k] = v;
    return v;
  }

  void set_logical(VarSet logical) {
    logical_ = std::move(logical);
    memo_.clear();
  }

  std::string geq(const Term& s, const Term& t) { return s == t ? T : gt(s, t); }

  std::string gt(const Term& s, const Term& t) {
    auto k = std::make_pair(s, t);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    std::string r = compute(s, t);
    memo_[k] = r;
    return r;
  }

 private:
  std::string compute(const Term& s, const Term& t) {
    if (s.is_var() || bound_in(s, logical_)) return F;
    if (bound_in(t, logical_)) return s.symbol().is_theory() ? F : T;
    if (t.is_var()) return occurs(t.as_var(), s) ? T : F;
    const FunSym& f = s.symbol();
    const FunSym& g = t.symbol();
    std::vector<std::string> alts;
    for (const Term& si : s.args()) alts.push_back(geq(si, t));
    auto dominates_args = [&] {
      std::vector<std::string> all;
      for (const Term& tj : t.args()) all.push_back(gt(s, tj));
      return f_and(all);
    };
    if (f == g) {
      std::string lex = F;
      for (std::size_t i = 0; i < s.args().size(); ++i) {
        if (s.arg(i) == t.arg(i)) continue;
        lex = gt(s.arg(i), t.arg(i));
        break;
      }
      alts.push_back(f_and({lex, dominates_args()}));
    } else if (!f.is_theory() && !g.is_theory()) {
      alts.push_back(f_and({"(> " + precedence_var(f) + " " + precedence_var(g) + ")", dominates_args()}));
    } else if (!f.is_theory()) {
      alts.push_back(dominates_args());
    }
    return f_or(alts);
  }

  std::map<std::string, std::string> prec_;
  VarSet logical_;
  std::map<std::pair<Term, Term>, std::string> memo_;
};

void collect_symbols(const Term& t, std::vector<SymbolPtr>& out, std::set<std::string>& seen) {
  if (t.is_var()) return;
  if (!t.symbol().is_theory() && seen.insert(key(t.symbol())).second) out.push_back(t.symbol_ptr());
  for (const Term& a : t.args()) collect_symbols(a, out, seen);
}

std::vector<SymbolPtr> term_symbols(const std::vector<const std::vector<Rule>*>& sets) {
  std::vector<SymbolPtr> out;
  std::set<std::string> seen;
  for (const auto* rs : sets) {
    for (const Rule& r : *rs) {
      collect_symbols(r.lhs, out, seen);
      collect_symbols(r.rhs, out, seen);
    }
  }
  return out;
}

struct RpoSolution {
  Precedence precedence;
  std::map<std::string, std::string> values;
};

/// Solves `assertions` over the precedence variables, preferring the order
/// of first occurrence. `eval` terms are returned with the model.
std::optional<RpoSolution> solve_precedence(RpoEncoder& enc, const std::vector<SymbolPtr>& symbols,
                                            std::vector<std::pair<std::string, std::string>> decls,
                                            std::vector<std::string> assertions, const std::vector<std::string>& eval,
                                            SmtSession& smt) {
  std::vector<std::string> pv;
  for (const SymbolPtr& f : symbols) {
    pv.push_back(enc.precedence_var(*f));
    decls.emplace_back(pv.back(), "Int");
  }
  if (pv.size() >= 2) {
    std::string d = "(distinct";
    for (const std::string& v : pv) d += " " + v;
    assertions.push_back(d + ")");
  }
  std::vector<std::string> ev = pv;
  ev.insert(ev.end(), eval.begin(), eval.end());
  std::vector<std::string> preferred = assertions;
  for (std::size_t i = 0; i + 1 < pv.size(); ++i) preferred.push_back("(> " + pv[i] + " " + pv[i + 1] + ")");
  SmtSession::RawAnswer a = smt.check_raw(decls, preferred, ev);
  if (a.result != SatResult::Sat) a = smt.check_raw(decls, assertions, ev);
  if (a.result != SatResult::Sat) return std::nullopt;
  RpoSolution sol;
  std::vector<std::pair<long, std::size_t>> rank;
  for (std::size_t i = 0; i < pv.size(); ++i) rank.emplace_back(-to_long(a.values.at(pv[i])), i);
  std::sort(rank.begin(), rank.end());
  for (auto& [v, i] : rank) sol.precedence.order.push_back(symbols[i]);
  sol.values = std::move(a.values);
  return sol;
}

bool is_true(const std::map<std::string, std::string>& values, const std::string& formula) {
  if (formula == T) return true;
  if (formula == F) return false;
  auto it = values.find(formula);
  return it != values.end() && it->second == "true";
}

VarSet guard_vars(const Rule& r) { return vars(r.guard); }

std::vector<std::string> rule_lines(const std::vector<Rule>& rs, const std::string& indent) {
  std::vector<std::string> out;
  for (const Rule& r : rs) out.push_back(indent + r.to_string());
  return out;
}

std::vector<Rule> without(const std::vector<Rule>& all, const std::vector<std::size_t>& drop) {
  std::vector<Rule> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (std::find(drop.begin(), drop.end(), i) == drop.end()) out.push_back(all[i]);
  }
  return out;
}

ProcessorResult make_result(const std::string& method, const DPProblem& dp, const std::vector<std::size_t>& strict) {
  ProcessorResult r;
  r.method = method;
  for (std::size_t i : strict) r.removed.push_back(dp.pairs[i]);
  r.remaining = DPProblem{without(dp.pairs, strict), dp.rules, false};
  return r;
}

bool is_cancel(SmtSession& smt) { return smt.cancelled(); }

}  // namespace

Rule flatten_calculations(const Rule& r) {
  VarSet gv = vars(r.guard);
  std::vector<Term> eqs{r.guard};
  std::function<Term(const Term&)> go = [&](const Term& t) -> Term {
    if (t.is_var() || t.is_value()) return t;
    if (t.is_logical() && subset(vars(t), gv)) {
      Term y = Term::var(fresh_var("y", t.sort()));
      eqs.push_back(mk_eq(y, t));
      return y;
    }
    std::vector<Term> args;
    for (const Term& a : t.args()) args.push_back(go(a));
    return Term::app(t.symbol_ptr(), std::move(args));
  };
  Rule out = r;
  out.rhs = go(r.rhs);
  out.guard = mk_and(eqs);
  return out;
}

DPProblem compute_dps(const Problem& p) {
  std::set<std::string> defined;
  for (const Rule& r : p.rules) {
    if (r.lhs.is_app() && !r.lhs.symbol().is_theory()) defined.insert(key(r.lhs.symbol()));
  }
  DPProblem dp;
  dp.rules = p.rules;
  for (const Rule& rule : p.rules) {
    Rule r = flatten_calculations(rule);
    unsigned n = 0;
    for (const Position& q : fun_positions(r.rhs)) {
      const Term& u = subterm_at(r.rhs, q);
      if (!defined.count(key(u.symbol()))) continue;
      dp.pairs.emplace_back(mark(r.lhs), mark(u), r.guard, rule.name + "#" + std::to_string(++n));
    }
  }
  return dp;
}

std::string DPGraph::to_sexp() const {
  std::string s = "(dp-graph";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    s += "\n  (node " + std::to_string(i) + " " + nodes[i].lhs.to_string() + " " + nodes[i].rhs.to_string() + " " +
         nodes[i].guard.to_string() + ")";
  }
  for (auto [a, b] : edges) s += "\n  (edge " + std::to_string(a) + " " + std::to_string(b) + ")";
  return s + ")";
}

DPGraph dp_graph(const DPProblem& dp, SmtSession& smt) {
  std::set<std::string> defined;
  for (const Rule& r : dp.rules) {
    if (r.lhs.is_app()) defined.insert(key(r.lhs.symbol()));
  }
  DPGraph g;
  g.nodes = dp.pairs;
  for (std::size_t i = 0; i < dp.pairs.size(); ++i) {
    const Rule& a = dp.pairs[i];
    VarSet la = guard_vars(a);
    // subterms that may still rewrite become fresh variables
    std::function<Term(const Term&)> cap = [&](const Term& t) -> Term {
      if (t.is_var()) return la.count(t.as_var()) ? t : Term::var(fresh_var("c", t.sort()));
      if (t.is_value()) return t;
      if (t.symbol().is_theory() || defined.count(key(t.symbol()))) return Term::var(fresh_var("c", t.sort()));
      std::vector<Term> args;
      for (const Term& u : t.args()) args.push_back(cap(u));
      return Term::app(t.symbol_ptr(), std::move(args));
    };
    std::vector<Term> args;
    for (const Term& u : a.rhs.args()) args.push_back(cap(u));
    Term head = Term::app(a.rhs.symbol_ptr(), std::move(args));
    for (std::size_t j = 0; j < dp.pairs.size(); ++j) {
      Rule b = rename_fresh(dp.pairs[j]);
      if (!(b.lhs.symbol() == head.symbol())) continue;
      VarSet restricted = la;
      VarSet lb = guard_vars(b);
      restricted.insert(lb.begin(), lb.end());
      auto sigma = unify(head, b.lhs, restricted);
      if (!sigma) continue;
      Term phi = mk_and(sigma->apply(a.guard), sigma->apply(b.guard));
      if (smt.check_sat(phi).result == SatResult::Unsat) continue;
      g.edges.emplace_back(i, j);
    }
  }
  return g;
}

std::vector<DPProblem> dependency_graph(const DPProblem& dp, SmtSession& smt) {
  DPGraph g = dp_graph(dp, smt);
  std::size_t n = g.nodes.size();
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<bool> self(n, false);
  for (auto [a, b] : g.edges) {
    succ[a].push_back(b);
    if (a == b) self[a] = true;
  }
  // Tarjan; components come out in reverse topological order
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on[v] = true;
    for (std::size_t w : succ[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> c;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on[w] = false;
        c.push_back(w);
      } while (w != v);
      std::sort(c.begin(), c.end());
      comps.push_back(std::move(c));
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) visit(v);
  }
  std::reverse(comps.begin(), comps.end());
  std::vector<DPProblem> out;
  for (const auto& c : comps) {
    if (c.size() == 1 && !self[c[0]]) continue;
    DPProblem sub;
    sub.rules = dp.rules;
    sub.graph_processed = true;
    for (std::size_t i : c) sub.pairs.push_back(dp.pairs[i]);
    out.push_back(std::move(sub));
  }
  return out;
}

std::string Precedence::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < order.size(); ++i) s += (i ? " > " : "") + order[i]->name;
  return s;
}

std::optional<Precedence> rpo_prove(const std::vector<Rule>& rules, SmtSession& smt) {
  RpoEncoder enc;
  std::vector<std::string> assertions;
  for (const Rule& r : rules) {
    enc.set_logical(guard_vars(r));
    std::string c = enc.gt(r.lhs, r.rhs);
    if (c == F) return std::nullopt;
    assertions.push_back(c);
  }
  auto sol = solve_precedence(enc, term_symbols({&rules}), {}, assertions, {}, smt);
  if (!sol) return std::nullopt;
  return sol->precedence;
}

std::string Projection::to_string() const {
  auto name = [](const std::string& k) { return k.substr(0, k.rfind('/')); };
  std::string s;
  for (const auto& [f, i] : index) s += (s.empty() ? "" : ", ") + std::string("π(") + name(f) + ") = " + std::to_string(i + 1);
  for (const auto& [f, cs] : coefficients) {
    std::string sum;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (cs[i] == 0) continue;
      sum += (sum.empty() ? "" : " + ") + std::to_string(cs[i]) + "*x" + std::to_string(i + 1);
    }
    s += (s.empty() ? "" : ", ") + std::string("π(") + name(f) + ") = " + (sum.empty() ? "0" : sum);
  }
  return s;
}

std::optional<ProcessorResult> rpo_processor(const DPProblem& dp, SmtSession& smt) {
  if (dp.pairs.empty()) return std::nullopt;
  RpoEncoder enc;
  std::vector<std::string> assertions;
  for (const Rule& r : dp.rules) {
    enc.set_logical(guard_vars(r));
    std::string c = enc.geq(r.lhs, r.rhs);
    if (c == F) return std::nullopt;
    assertions.push_back(c);
  }
  std::vector<std::string> strict;
  for (const Rule& p : dp.pairs) {
    enc.set_logical(guard_vars(p));
    std::string w = enc.geq(p.lhs, p.rhs);
    if (w == F) return std::nullopt;
    assertions.push_back(w);
    strict.push_back(enc.gt(p.lhs, p.rhs));
  }
  assertions.push_back(f_or(strict));
  if (assertions.back() == F) return std::nullopt;
  std::vector<std::string> eval;
  for (const std::string& s : strict) {
    if (s != T && s != F) eval.push_back(s);
  }
  auto sol = solve_precedence(enc, term_symbols({&dp.pairs, &dp.rules}), {}, assertions, eval, smt);
  if (!sol) return std::nullopt;
  std::vector<std::size_t> removed;
  for (std::size_t i = 0; i < strict.size(); ++i) {
    if (is_true(sol->values, strict[i])) removed.push_back(i);
  }
  if (removed.empty()) return std::nullopt;
  ProcessorResult r = make_result("recursive path order", dp, removed);
  r.precedence = sol->precedence;
  r.proof.push_back("precedence " + sol->precedence.to_string());
  return r;
}

namespace {

struct PairShape {
  std::string f, g;  // marked symbols of lhs and rhs
};

PairShape shape_of(const Rule& p) { return {key(p.lhs.symbol()), key(p.rhs.symbol())}; }

/// Shared driver for the projection processors. For each pair and each
/// choice (i, j) of projected arguments, `weak` and `strict` give the
/// precomputed verdicts; the solver picks one argument per symbol.
std::optional<ProcessorResult> choose_projection(
    const std::string& method, const DPProblem& dp, SmtSession& smt,
    const std::function<bool(const Rule&, std::size_t, std::size_t, bool strict)>& decreases,
    const std::function<bool(const FunSym&, std::size_t)>& eligible) {
  if (dp.pairs.empty()) return std::nullopt;
  std::map<std::string, std::size_t> arity;
  for (const Rule& p : dp.pairs) {
    arity[key(p.lhs.symbol())] = p.lhs.symbol().arity();
    arity[key(p.rhs.symbol())] = p.rhs.symbol().arity();
  }
  std::map<std::string, std::string> pvar;
  std::vector<std::pair<std::string, std::string>> decls;
  std::vector<std::string> assertions;
  std::map<std::string, const FunSym*> sym;
  for (const Rule& p : dp.pairs) {
    sym[key(p.lhs.symbol())] = &p.lhs.symbol();
    sym[key(p.rhs.symbol())] = &p.rhs.symbol();
  }
  for (const auto& [f, n] : arity) {
    pvar[f] = "|proj:" + f + "|";
    decls.emplace_back(pvar[f], "Int");
    std::vector<std::string> allowed;
    for (std::size_t i = 0; i < n; ++i) {
      if (eligible(*sym[f], i)) allowed.push_back("(= " + pvar[f] + " " + std::to_string(i) + ")");
    }
    if (allowed.empty()) return std::nullopt;
    assertions.push_back(f_or(allowed));
  }
  std::vector<std::string> flags;
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, bool>>> tables(dp.pairs.size());
  for (std::size_t k = 0; k < dp.pairs.size(); ++k) {
    const Rule& p = dp.pairs[k];
    PairShape sh = shape_of(p);
    std::vector<std::string> weak_alts, strict_alts;
    for (std::size_t i = 0; i < arity[sh.f]; ++i) {
      if (!eligible(p.lhs.symbol(), i)) continue;
      for (std::size_t j = 0; j < arity[sh.g]; ++j) {
        if (!eligible(p.rhs.symbol(), j)) continue;
        if (!decreases(p, i, j, false)) continue;
        std::string choice =
            "(and (= " + pvar[sh.f] + " " + std::to_string(i) + ") (= " + pvar[sh.g] + " " + std::to_string(j) + "))";
        weak_alts.push_back(choice);
        bool s = decreases(p, i, j, true);
        if (s) strict_alts.push_back(choice);
        tables[k].emplace_back(i, j, s);
      }
    }
    std::string flag = "|strict:" + std::to_string(k) + "|";
    decls.emplace_back(flag, "Bool");
    flags.push_back(flag);
    assertions.push_back(f_or(weak_alts));
    assertions.push_back("(=> " + flag + " " + f_or(strict_alts) + ")");
    if (assertions.back() == F) return std::nullopt;
  }
  assertions.push_back(f_or(flags));
  std::vector<std::string> eval;
  for (const auto& [f, v] : pvar) eval.push_back(v);
  SmtSession::RawAnswer a = smt.check_raw(decls, assertions, eval);
  if (a.result != SatResult::Sat) return std::nullopt;
  Projection proj;
  for (const auto& [f, v] : pvar) proj.index[f] = static_cast<unsigned>(to_long(a.values.at(v)));
  std::vector<std::size_t> removed;
  for (std::size_t k = 0; k < dp.pairs.size(); ++k) {
    PairShape sh = shape_of(dp.pairs[k]);
    for (auto [i, j, s] : tables[k]) {
      if (s && proj.index[sh.f] == i && proj.index[sh.g] == j) removed.push_back(k);
    }
  }
  if (removed.empty()) return std::nullopt;
  ProcessorResult r = make_result(method, dp, removed);
  r.proof.push_back("projection " + proj.to_string());
  r.projection = std::move(proj);
  return r;
}

bool proper_subterm(const Term& small, const Term& big) {
  if (big.is_var()) return false;
  for (const Term& a : big.args()) {
    if (a == small || proper_subterm(small, a)) return true;
  }
  return false;
}

}  // namespace

std::optional<ProcessorResult> subterm_criterion(const DPProblem& dp, SmtSession& smt) {
  if (dp.pairs.empty()) {
    ProcessorResult r;
    r.method = "subterm criterion";
    r.remaining = dp;
    return r;
  }
  return choose_projection(
      "subterm criterion", dp, smt,
      [](const Rule& p, std::size_t i, std::size_t j, bool strict) {
        const Term& l = p.lhs.arg(i);
        const Term& r = p.rhs.arg(j);
        return proper_subterm(r, l) || (!strict && l == r);
      },
      [](const FunSym&, std::size_t) { return true; });
}

namespace {

/// The projected argument is a logical integer term over guard variables,
/// so every instance in a chain is a value.
bool value_argument(const Rule& p, const Term& t) { return t.sort().is_int() && bound_in(t, guard_vars(p)); }

}  // namespace

std::optional<ProcessorResult> value_criterion(const DPProblem& dp, SmtSession& smt) {
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, bool>, bool> cache;
  std::map<const Rule*, std::size_t> ids;
  for (std::size_t k = 0; k < dp.pairs.size(); ++k) ids[&dp.pairs[k]] = k;
  return choose_projection(
      "value criterion", dp, smt,
      [&](const Rule& p, std::size_t i, std::size_t j, bool strict) {
        auto k = std::make_tuple(ids.at(&p), i, j, strict);
        if (auto it = cache.find(k); it != cache.end()) return it->second;
        const Term& l = p.lhs.arg(i);
        const Term& r = p.rhs.arg(j);
        // equal arguments stay equal along a chain, values or not
        bool ok = !strict && l == r;
        if (!ok && value_argument(p, l) && value_argument(p, r)) {
          Term goal = strict ? well_founded_greater(l, r) : well_founded_geq(l, r);
          ok = smt.check_valid(mk_implies(p.guard, goal)).result == Validity::Valid;
        }
        cache[k] = ok;
        return ok;
      },
      [](const FunSym& f, std::size_t i) { return f.arg_sorts[i].is_int(); });
}

std::optional<ProcessorResult> special_value_criterion(const DPProblem& dp, SmtSession& smt, int bound) {
  if (dp.pairs.empty()) return std::nullopt;
  // coefficient unknowns per marked symbol and integer argument
  std::map<std::string, std::vector<std::string>> coef;
  std::map<std::string, std::size_t> arity;
  std::map<std::string, std::set<std::size_t>> forbidden;
  for (const Rule& p : dp.pairs) {
    for (const Term* t : {&p.lhs, &p.rhs}) {
      std::string f = key(t->symbol());
      arity[f] = t->symbol().arity();
      for (std::size_t i = 0; i < t->symbol().arity(); ++i) {
        if (!value_argument(p, t->arg(i))) forbidden[f].insert(i);
      }
    }
  }
  std::vector<std::pair<std::string, std::string>> decls;
  std::vector<std::string> assertions;
  bool any = false;
  for (const auto& [f, n] : arity) {
    for (std::size_t i = 0; i < n; ++i) {
      std::string c = "|coef:" + f + ":" + std::to_string(i) + "|";
      coef[f].push_back(c);
      decls.emplace_back(c, "Int");
      if (forbidden[f].count(i)) {
        assertions.push_back("(= " + c + " 0)");
      } else {
        any = true;
        assertions.push_back("(<= (- " + std::to_string(bound) + ") " + c + " " + std::to_string(bound) + ")");
      }
    }
  }
  if (!any) return std::nullopt;
  // c * t for a bounded unknown c, kept linear in t
  auto times = [&](const std::string& c, const std::string& t) {
    std::string s = "0";
    for (int v = -bound; v <= bound; ++v) {
      if (v == 0) continue;
      std::string vs = v < 0 ? "(- " + std::to_string(-v) + ")" : std::to_string(v);
      s = "(ite (= " + c + " " + vs + ") (* " + vs + " " + t + ") " + s + ")";
    }
    return s;
  };
  auto combination = [&](const Term& t) {
    std::string f = key(t.symbol());
    std::string s = "(+ 0";
    for (std::size_t i = 0; i < t.symbol().arity(); ++i) {
      if (forbidden[f].count(i)) continue;
      s += " " + times(coef[f][i], smt_term(t.arg(i)));
    }
    return s + ")";
  };
  std::vector<std::string> flags;
  for (std::size_t k = 0; k < dp.pairs.size(); ++k) {
    const Rule& p = dp.pairs[k];
    std::string flag = "|strict:" + std::to_string(k) + "|";
    decls.emplace_back(flag, "Bool");
    flags.push_back(flag);
    std::string l = combination(p.lhs);
    std::string r = combination(p.rhs);
    std::string body = "(=> " + smt_term(p.guard) + " (ite " + flag + " (and (> " + l + " " + r + ") (>= " + l +
                       " 0)) (>= " + l + " " + r + ")))";
    VarSet xs = vars(p.guard);
    if (xs.empty()) {
      assertions.push_back(body);
    } else {
      std::string q = "(forall (";
      for (const Var& x : xs) q += "(" + smt_symbol(x) + " " + smt_sort(x.sort) + ")";
      assertions.push_back(q + ") " + body + ")");
    }
  }
  assertions.push_back(f_or(flags));
  std::vector<std::string> eval;
  for (const auto& [f, cs] : coef) eval.insert(eval.end(), cs.begin(), cs.end());

  // every pair weakly, the removed ones strictly, under fixed coefficients
  auto linear = [&](const Projection& proj, const Term& t) {
    const std::vector<int>& cs = proj.coefficients.at(key(t.symbol()));
    std::vector<Term> terms{mk_int(0)};
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (cs[i] != 0) terms.push_back(int_op("*", {mk_int(cs[i]), t.arg(i)}));
    }
    return int_op("+", terms);
  };
  auto check = [&](const Projection& proj) -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> removed;
    for (std::size_t k = 0; k < dp.pairs.size(); ++k) {
      const Rule& p = dp.pairs[k];
      Term l = linear(proj, p.lhs);
      Term r = linear(proj, p.rhs);
      if (smt.check_valid(mk_implies(p.guard, well_founded_greater(l, r))).result == Validity::Valid) {
        removed.push_back(k);
      } else if (smt.check_valid(mk_implies(p.guard, well_founded_geq(l, r))).result != Validity::Valid) {
        return std::nullopt;
      }
    }
    if (removed.empty()) return std::nullopt;
    return removed;
  };
  auto accept = [&](Projection proj, const std::vector<std::size_t>& removed) {
    ProcessorResult res = make_result("special value criterion", dp, removed);
    res.proof.push_back("projection " + proj.to_string());
    res.projection = std::move(proj);
    return res;
  };

  // Few unknowns: try the candidates directly, smallest first, with
  // quantifier-free queries only.
  std::vector<std::pair<std::string, std::size_t>> slots;
  for (const auto& [f, n] : arity) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!forbidden[f].count(i)) slots.emplace_back(f, i);
    }
  }
  std::size_t width = static_cast<std::size_t>(2 * bound + 1);
  std::size_t combos = 1;
  for (std::size_t i = 0; i < slots.size() && combos <= 625; ++i) combos *= width;
  if (combos <= 625) {
    std::vector<std::vector<int>> candidates;
    for (std::size_t code = 0; code < combos; ++code) {
      std::vector<int> c;
      for (std::size_t i = 0, rest = code; i < slots.size(); ++i, rest /= width) {
        c.push_back(static_cast<int>(rest % width) - bound);
      }
      candidates.push_back(std::move(c));
    }
    auto norm = [](const std::vector<int>& c) {
      int n = 0;
      for (int x : c) n += std::abs(x);
      return n;
    };
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](const auto& a, const auto& b) { return norm(a) < norm(b); });
    for (const std::vector<int>& c : candidates) {
      if (norm(c) == 0) continue;
      Projection proj;
      for (const auto& [f, n] : arity) proj.coefficients[f].assign(n, 0);
      for (std::size_t i = 0; i < slots.size(); ++i) proj.coefficients[slots[i].first][slots[i].second] = c[i];
      if (auto removed = check(proj)) return accept(std::move(proj), *removed);
    }
    return std::nullopt;
  }

  SmtSession::RawAnswer a = smt.check_raw(decls, assertions, eval);
  if (a.result != SatResult::Sat) return std::nullopt;
  Projection proj;
  for (const auto& [f, cs] : coef) {
    for (const std::string& c : cs) proj.coefficients[f].push_back(static_cast<int>(to_long(a.values.at(c))));
  }
  auto removed = check(proj);
  if (!removed) return std::nullopt;
  return accept(std::move(proj), *removed);
}

std::optional<std::vector<DPProblem>> reduction_pairs(const DPProblem& dp, SmtSession& smt,
                                                      const TerminationOptions& opt, std::vector<std::string>* proof) {
  for (const std::string& m : opt.methods) {
    std::optional<ProcessorResult> r;
    try {
      if (m == "rpo") r = rpo_processor(dp, smt);
      else if (m == "vc") r = value_criterion(dp, smt);
      else if (m == "subterm") r = subterm_criterion(dp, smt);
      else if (m == "svc") r = special_value_criterion(dp, smt, opt.coefficient_bound);
      else throw Error(ErrorKind::StrategyParseError, "unknown termination method " + m);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::StrategyParseError || is_cancel(smt)) throw;
      r.reset();
    }
    if (!r) continue;
    if (proof) {
      proof->push_back("  " + r->method + " removes:");
      auto lines = rule_lines(r->removed, "    ");
      proof->insert(proof->end(), lines.begin(), lines.end());
      for (const std::string& l : r->proof) proof->push_back("    " + l);
    }
    if (r->remaining.pairs.empty()) return std::vector<DPProblem>{};
    return dependency_graph(r->remaining, smt);
  }
  return std::nullopt;
}

Verdict prove_termination(const Problem& p, SmtSession& smt, const TerminationOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  Verdict v;
  auto finish = [&]() -> Verdict& {
    v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return v;
  };
  if (opt.direct_rpo) {
    std::optional<Precedence> prec;
    try {
      prec = rpo_prove(p.rules, smt);
    } catch (const Error& e) {
      if (is_cancel(smt)) throw;
    }
    if (prec) {
      v.answer = Answer::Yes;
      v.method = "recursive path order";
      v.proof.push_back("all rules decrease with precedence " + prec->to_string());
      return finish();
    }
  }
  v.method = "dependency pairs";
  DPProblem dp = compute_dps(p);
  v.proof.push_back("dependency pairs:");
  auto lines = rule_lines(dp.pairs, "  ");
  v.proof.insert(v.proof.end(), lines.begin(), lines.end());
  std::vector<DPProblem> work = dependency_graph(dp, smt);
  v.proof.push_back("dependency graph: " + std::to_string(work.size()) + " strongly connected component(s)");
  unsigned rounds = 0;
  while (!work.empty()) {
    DPProblem cur = std::move(work.back());
    work.pop_back();
    v.proof.push_back("component:");
    lines = rule_lines(cur.pairs, "  ");
    v.proof.insert(v.proof.end(), lines.begin(), lines.end());
    if (++rounds > opt.max_rounds) {
      v.reasons.push_back("round limit reached");
      return finish();
    }
    auto next = reduction_pairs(cur, smt, opt, &v.proof);
    if (!next) {
      v.reasons.push_back("no method applies to the component");
      v.reasons.insert(v.reasons.end(), lines.begin(), lines.end());
      return finish();
    }
    for (auto it = next->rbegin(); it != next->rend(); ++it) work.push_back(std::move(*it));
  }
  v.answer = Answer::Yes;
  return finish();
}

}  // namespace lctrs
