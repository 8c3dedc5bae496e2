#include "lctrs/rewriting.hpp"

#include "lctrs/theory.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_set>

namespace lctrs {

const char* to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

std::string CTerm::to_string() const {
  if (constraint == mk_true()) return term.to_string();
  return term.to_string() + " [" + constraint.to_string() + "]";
}

std::string CEquation::to_string() const {
  std::string s = left.to_string() + " ≈ " + right.to_string();
  if (constraint == mk_true()) return s;
  return s + " [" + constraint.to_string() + "]";
}

Rewriter::Rewriter(std::vector<Rule> rules, SmtSession& smt, RewriteLimits limits)
    : rules_(std::move(rules)), smt_(smt), limits_(limits) {}

// ---------------------------------------------------------------------------
// SMT wrappers

namespace {

bool is_true(const Term& t) { return t.is_value() && t.symbol().value->as_bool(); }
bool is_false(const Term& t) { return t.is_value() && !t.symbol().value->as_bool(); }

}  // namespace

Tri Rewriter::satisfiable(const Term& phi) {
  if (is_true(phi)) return Tri::Yes;
  if (is_false(phi)) return Tri::No;
  if (phi.is_ground()) return interpret(phi).as_bool() ? Tri::Yes : Tri::No;
  try {
    switch (smt_.check_sat(phi).result) {
      case SatResult::Sat: return Tri::Yes;
      case SatResult::Unsat: return Tri::No;
      case SatResult::Unknown: break;
    }
  } catch (const Error& e) {
    if (smt_.cancelled()) throw;
    if (e.kind() != ErrorKind::SolverTimeout && e.kind() != ErrorKind::SolverCrashed) throw;
  }
  incomplete_ = true;
  return Tri::Unknown;
}

Tri Rewriter::valid(const Term& phi) {
  if (is_true(phi)) return Tri::Yes;
  if (phi.is_ground()) return interpret(phi).as_bool() ? Tri::Yes : Tri::No;
  Tri neg = satisfiable(mk_not(phi));
  if (neg == Tri::No) return Tri::Yes;
  if (neg == Tri::Yes) return Tri::No;
  return Tri::Unknown;
}

Tri Rewriter::valid_exists(const Term& phi, const Term& psi, const VarSet& ys) {
  std::vector<std::pair<std::string, std::string>> decls;
  VarSet free = vars(phi);
  collect_vars(psi, free);
  for (const Var& x : free) {
    if (!ys.count(x)) decls.emplace_back(smt_symbol(x), smt_sort(x.sort));
  }
  std::string binders;
  for (const Var& y : ys) binders += "(" + smt_symbol(y) + " " + smt_sort(y.sort) + ")";
  std::string q = "(forall (" + binders + ") (not " + smt_term(psi) + "))";
  try {
    auto ans = smt_.check_raw(decls, {smt_term(phi), q});
    if (ans.result == SatResult::Unsat) return Tri::Yes;
    if (ans.result == SatResult::Sat) return Tri::No;
  } catch (const Error& e) {
    if (smt_.cancelled()) throw;
    if (e.kind() != ErrorKind::SolverTimeout && e.kind() != ErrorKind::SolverCrashed) throw;
  }
  incomplete_ = true;
  return Tri::Unknown;
}

// ---------------------------------------------------------------------------
// Single steps

namespace {

bool leafish(const Term& t, const VarSet& pv) { return t.is_value() || (t.is_var() && pv.count(t.as_var())); }

Rule rename_unbound(const Rule& r) {
  VarSet ys = r.unbound_vars();
  if (ys.empty()) return r;
  Subst s;
  for (const Var& y : ys) s.bind(y, Term::var(fresh_var(y.name, y.sort)));
  Rule out(r.lhs, s.apply(r.rhs), s.apply(r.guard), r.name);
  out.is_calculation = r.is_calculation;
  return out;
}

}  // namespace

std::optional<Rewriter::Redex> Rewriter::redex_at(const Term& t, const Term& phi, const VarSet& pv, const Rule* rho) {
  if (t.is_var() || t.is_value()) return std::nullopt;
  Redex r;
  r.rule = rho;
  if (!rho) {
    if (!t.symbol().is_theory()) return std::nullopt;
    bool all_values = true;
    for (const Term& a : t.args()) {
      if (a.is_value()) continue;
      if (!leafish(a, pv)) return std::nullopt;
      all_values = false;
    }
    if (all_values) {
      r.replacement = Term::value(interpret(t));
    } else {
      Term x = Term::var(fresh_var("c", t.sort()));
      r.replacement = x;
      r.added.push_back(mk_eq(x, t));
    }
    return r;
  }
  if (t.symbol().is_theory() || !(rho->lhs.symbol() == t.symbol())) return std::nullopt;
  auto sigma = match(rho->lhs, t);
  if (!sigma) return std::nullopt;
  for (const Var& x : rho->logical_vars()) {
    const Term* b = sigma->find(x);
    if (b && !leafish(*b, pv)) return std::nullopt;
  }
  Rule inst = rename_unbound(*rho);
  VarSet ys = inst.unbound_vars();
  Term psi = sigma->apply(inst.guard);
  if (ys.empty()) {
    if (valid(mk_implies(phi, psi)) != Tri::Yes) return std::nullopt;
  } else {
    bool ok = false;
    VarSet guard_ys;
    for (const Var& y : vars(psi)) {
      if (ys.count(y)) guard_ys.insert(y);
    }
    if (guard_ys.empty()) {
      ok = valid(mk_implies(phi, psi)) == Tri::Yes;
    } else {
      Term both = mk_and(phi, psi);
      std::optional<Subst> witness;
      try {
        if (satisfiable(both) == Tri::Yes) witness = smt_.find_values(both, guard_ys);
      } catch (const Error& e) {
        if (smt_.cancelled()) throw;
        incomplete_ = true;
      }
      if (witness && valid(mk_implies(phi, witness->apply(psi))) == Tri::Yes) ok = true;
      if (!ok) ok = valid_exists(phi, psi, guard_ys) == Tri::Yes;
    }
    if (!ok) return std::nullopt;
    r.added.push_back(psi);
    Term ec = inst.extra_var_constraint();
    if (!is_true(ec)) r.added.push_back(ec);
  }
  r.replacement = sigma->apply(inst.rhs);
  r.instance = std::move(inst);
  r.sigma = std::move(*sigma);
  return r;
}

std::optional<CTerm> Rewriter::constrained_step(const CTerm& ct, const Position& p, const Rule& rho) {
  if (satisfiable(ct.constraint) != Tri::Yes) return std::nullopt;
  auto r = redex_at(subterm_at(ct.term, p), ct.constraint, vars(ct.constraint), &rho);
  if (!r) return std::nullopt;
  std::vector<Term> cs{ct.constraint};
  cs.insert(cs.end(), r->added.begin(), r->added.end());
  return CTerm{replace_at(ct.term, p, r->replacement), mk_and(cs)};
}

std::optional<CTerm> Rewriter::calc_step(const CTerm& ct, const Position& p) {
  auto r = redex_at(subterm_at(ct.term, p), ct.constraint, vars(ct.constraint), nullptr);
  if (!r) return std::nullopt;
  std::vector<Term> cs{ct.constraint};
  cs.insert(cs.end(), r->added.begin(), r->added.end());
  return CTerm{replace_at(ct.term, p, r->replacement), mk_and(cs)};
}

std::vector<Rewriter::Redex> Rewriter::redexes(const CTerm& ct) {
  std::vector<Redex> out;
  if (satisfiable(ct.constraint) != Tri::Yes) return out;
  VarSet pv = vars(ct.constraint);
  for (const Position& p : fun_positions(ct.term)) {
    const Term& u = subterm_at(ct.term, p);
    if (u.is_value()) continue;
    if (u.symbol().is_theory()) {
      if (auto r = redex_at(u, ct.constraint, pv, nullptr)) {
        r->pos = p;
        out.push_back(std::move(*r));
      }
      continue;
    }
    for (const Rule& rho : rules_) {
      if (auto r = redex_at(u, ct.constraint, pv, &rho)) {
        r->pos = p;
        out.push_back(std::move(*r));
      }
    }
  }
  return out;
}

std::vector<std::pair<CTerm, StepInfo>> Rewriter::steps(const CTerm& ct) {
  std::vector<std::pair<CTerm, StepInfo>> out;
  for (Redex& r : redexes(ct)) {
    std::vector<Term> cs{ct.constraint};
    cs.insert(cs.end(), r.added.begin(), r.added.end());
    StepInfo info;
    info.kind = r.rule ? StepInfo::Single : StepInfo::Calculation;
    info.positions = {r.pos};
    info.rules = {r.rule ? r.rule->name : "calc"};
    out.emplace_back(CTerm{replace_at(ct.term, r.pos, r.replacement), mk_and(cs)}, std::move(info));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parallel steps and multisteps

std::optional<CTerm> Rewriter::parallel_step(const CTerm& ct,
                                             const std::vector<std::pair<Position, const Rule*>>& redexes) {
  for (std::size_t i = 0; i < redexes.size(); ++i) {
    for (std::size_t j = i + 1; j < redexes.size(); ++j) {
      if (!parallel(redexes[i].first, redexes[j].first)) return std::nullopt;
    }
  }
  if (redexes.empty()) return ct;
  if (satisfiable(ct.constraint) != Tri::Yes) return std::nullopt;
  VarSet pv = vars(ct.constraint);
  Term t = ct.term;
  std::vector<Term> cs{ct.constraint};
  for (const auto& [p, rho] : redexes) {
    auto r = redex_at(subterm_at(ct.term, p), ct.constraint, pv, rho);
    if (!r) return std::nullopt;
    t = replace_at(t, p, r->replacement);
    cs.insert(cs.end(), r->added.begin(), r->added.end());
  }
  return CTerm{t, mk_and(cs)};
}

std::vector<std::pair<CTerm, std::vector<Position>>> Rewriter::parallel_steps_at(const CTerm& ct) {
  std::vector<Redex> rs = redexes(ct);
  std::vector<std::pair<CTerm, std::vector<Position>>> out{{ct, {}}};
  std::unordered_set<std::string> seen{ct.to_string()};
  std::vector<const Redex*> chosen;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (out.size() >= limits_.max_parallel) return;
    if (i == rs.size()) {
      if (chosen.empty()) return;
      Term t = ct.term;
      std::vector<Term> cs{ct.constraint};
      std::vector<Position> ps;
      for (const Redex* r : chosen) {
        t = replace_at(t, r->pos, r->replacement);
        cs.insert(cs.end(), r->added.begin(), r->added.end());
        ps.push_back(r->pos);
      }
      CTerm c{t, mk_and(cs)};
      if (seen.insert(c.to_string()).second) out.emplace_back(std::move(c), std::move(ps));
      return;
    }
    go(i + 1);
    bool ok = std::all_of(chosen.begin(), chosen.end(), [&](const Redex* r) { return parallel(r->pos, rs[i].pos); });
    if (ok) {
      chosen.push_back(&rs[i]);
      go(i + 1);
      chosen.pop_back();
    }
  };
  go(0);
  return out;
}

std::vector<CTerm> Rewriter::parallel_steps(const CTerm& ct) {
  std::vector<CTerm> out;
  for (auto& [c, ps] : parallel_steps_at(ct)) out.push_back(std::move(c));
  return out;
}

std::vector<Rewriter::Developed> Rewriter::multisteps_rec(const Term& t, const Term& phi, const VarSet& pv,
                                                          unsigned depth) {
  std::vector<Developed> out{{t, {}}};
  if (t.is_var() || t.is_value()) return out;
  std::set<std::string> seen{t.to_string()};
  auto push = [&](Term u, std::vector<Term> added) {
    if (out.size() >= limits_.max_parallel) return;
    std::string key = u.to_string();
    for (const Term& a : added) key += " & " + a.to_string();
    if (seen.insert(key).second) out.emplace_back(std::move(u), std::move(added));
  };
  // congruence
  if (!t.args().empty()) {
    std::vector<std::vector<Developed>> opts;
    for (const Term& a : t.args()) opts.push_back(multisteps_rec(a, phi, pv, depth));
    std::vector<Term> args(t.args().size());
    std::vector<Term> added;
    std::function<void(std::size_t)> prod = [&](std::size_t i) {
      if (out.size() >= limits_.max_parallel) return;
      if (i == opts.size()) {
        push(Term::app(t.symbol_ptr(), args), added);
        return;
      }
      for (const Developed& d : opts[i]) {
        args[i] = d.first;
        std::size_t mark = added.size();
        added.insert(added.end(), d.second.begin(), d.second.end());
        prod(i + 1);
        added.resize(mark);
      }
    };
    prod(0);
  }
  if (depth == 0) return out;
  // root steps, with developments inside the matching substitution
  if (t.symbol().is_theory()) {
    if (auto r = redex_at(t, phi, pv, nullptr)) push(r->replacement, r->added);
    return out;
  }
  for (const Rule& rho : rules_) {
    auto r = redex_at(t, phi, pv, &rho);
    if (!r) continue;
    VarSet lv = r->instance.logical_vars();
    std::vector<Var> xs;
    std::vector<std::vector<Developed>> opts;
    for (const Var& x : vars(r->instance.lhs)) {
      if (lv.count(x)) continue;
      xs.push_back(x);
      opts.push_back(multisteps_rec(*r->sigma.find(x), phi, pv, depth - 1));
    }
    Subst tau = r->sigma;
    std::vector<Term> added = r->added;
    std::function<void(std::size_t)> prod = [&](std::size_t i) {
      if (out.size() >= limits_.max_parallel) return;
      if (i == opts.size()) {
        push(tau.apply(r->instance.rhs), added);
        return;
      }
      for (const Developed& d : opts[i]) {
        Subst saved = tau;
        tau.bind(xs[i], d.first);
        std::size_t mark = added.size();
        added.insert(added.end(), d.second.begin(), d.second.end());
        prod(i + 1);
        added.resize(mark);
        tau = saved;
      }
    };
    prod(0);
  }
  return out;
}

std::vector<CTerm> Rewriter::multisteps(const CTerm& ct) {
  if (satisfiable(ct.constraint) != Tri::Yes) return {ct};
  std::vector<CTerm> out;
  for (auto& [t, added] : multisteps_rec(ct.term, ct.constraint, vars(ct.constraint), limits_.multistep_depth)) {
    std::vector<Term> cs{ct.constraint};
    cs.insert(cs.end(), added.begin(), added.end());
    out.push_back(CTerm{t, mk_and(cs)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Equations

namespace {

CTerm side_of(const CEquation& e, Side s) { return CTerm{s == Side::Left ? e.left : e.right, e.constraint}; }

CEquation with_side(const CEquation& e, Side s, const CTerm& c) {
  return s == Side::Left ? CEquation{c.term, e.right, c.constraint} : CEquation{e.left, c.term, c.constraint};
}

}  // namespace

std::vector<CEquation> Rewriter::eq_steps(const CEquation& e, Side side) {
  std::vector<CEquation> out;
  for (auto& [c, info] : steps(side_of(e, side))) out.push_back(with_side(e, side, c));
  return out;
}

std::vector<CEquation> Rewriter::eq_parallel_steps(const CEquation& e, Side side) {
  std::vector<CEquation> out;
  for (const CTerm& c : parallel_steps(side_of(e, side))) out.push_back(with_side(e, side, c));
  return out;
}

std::vector<CEquation> Rewriter::eq_multisteps(const CEquation& e, Side side) {
  std::vector<CEquation> out;
  for (const CTerm& c : multisteps(side_of(e, side))) out.push_back(with_side(e, side, c));
  return out;
}

std::vector<CEquation> Rewriter::eq_reach(const CEquation& e, Side side, unsigned max) {
  std::vector<CEquation> out{e};
  std::unordered_set<std::string> seen{e.key()};
  std::size_t begin = 0;
  for (unsigned round = 0; round < max; ++round) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end && out.size() < limits_.max_states; ++i) {
      for (CEquation& n : eq_steps(out[i], side)) {
        if (seen.insert(n.key()).second) out.push_back(std::move(n));
      }
    }
    if (end == out.size()) break;
    begin = end;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Triviality and normal forms

namespace {

/// Collects the leaf equations under which a and b coincide; false if no
/// substitution respecting the constraint can make them equal.
bool align(const Term& a, const Term& b, const VarSet& pv, std::vector<Term>& eqs) {
  if (a == b) return true;
  if (leafish(a, pv) && leafish(b, pv)) {
    if (a.is_value() && b.is_value()) return false;
    eqs.push_back(mk_eq(a, b));
    return true;
  }
  if (a.is_var() || b.is_var() || a.is_value() || b.is_value()) return false;
  if (!(a.symbol() == b.symbol())) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (!align(a.arg(i), b.arg(i), pv, eqs)) return false;
  }
  return true;
}

/// Matching of a rule lhs against a subterm whose leaves may still be
/// instantiated with values: lhs values may meet logical variables (giving an
/// equation) and repeated lhs variables give alignment equations.
bool generalized_match(const Term& l, const Term& u, const VarSet& pv, Subst& sigma, std::vector<Term>& eqs) {
  if (l.is_var()) {
    if (const Term* b = sigma.find(l.as_var())) return align(*b, u, pv, eqs);
    sigma.bind(l.as_var(), u);
    return true;
  }
  if (l.is_value()) {
    if (u.is_value()) return l == u;
    if (leafish(u, pv)) {
      eqs.push_back(mk_eq(u, l));
      return true;
    }
    return false;
  }
  if (u.is_var() || u.is_value() || !(l.symbol() == u.symbol())) return false;
  for (std::size_t i = 0; i < l.args().size(); ++i) {
    if (!generalized_match(l.arg(i), u.arg(i), pv, sigma, eqs)) return false;
  }
  return true;
}

}  // namespace

Tri Rewriter::is_trivial(const CEquation& e) {
  if (e.left == e.right) return Tri::Yes;
  Tri sat = satisfiable(e.constraint);
  if (sat == Tri::No) return Tri::Yes;
  std::vector<Term> eqs;
  bool possible = align(e.left, e.right, vars(e.constraint), eqs);
  if (sat == Tri::Unknown) return Tri::Unknown;
  if (!possible) return Tri::No;
  Tri v = valid(mk_implies(e.constraint, mk_and(eqs)));
  if (v == Tri::Yes) return Tri::Yes;
  if (v == Tri::No) return Tri::No;
  return Tri::Unknown;
}

Tri Rewriter::nf_term(const Term& t, const Term& phi, const VarSet& pv) {
  bool unknown = false;
  for (const Position& p : positions(t)) {
    const Term& u = subterm_at(t, p);
    if (u.is_var()) {
      // an unconstrained variable may be instantiated by a redex
      if (!pv.count(u.as_var())) return Tri::No;
      continue;
    }
    if (u.is_value()) continue;
    if (u.symbol().is_theory()) {
      bool calc = std::all_of(u.args().begin(), u.args().end(), [&](const Term& a) { return leafish(a, pv); });
      if (calc) return Tri::No;
      continue;
    }
    for (const Rule& rho : rules_) {
      if (!(rho.lhs.symbol() == u.symbol())) continue;
      Rule inst = rename_unbound(rho);
      Subst sigma;
      std::vector<Term> eqs;
      if (!generalized_match(inst.lhs, u, pv, sigma, eqs)) continue;
      bool values_ok = true;
      for (const Var& x : inst.logical_vars()) {
        const Term* b = sigma.find(x);
        if (b && !leafish(*b, pv)) values_ok = false;
      }
      if (!values_ok) continue;
      std::vector<Term> cs{phi, sigma.apply(inst.guard)};
      cs.insert(cs.end(), eqs.begin(), eqs.end());
      Tri s = satisfiable(mk_and(cs));
      if (s == Tri::Yes) return Tri::No;
      if (s == Tri::Unknown) unknown = true;
    }
  }
  return unknown ? Tri::Unknown : Tri::Yes;
}

Tri Rewriter::is_normal_form(const CTerm& ct) {
  Tri sat = satisfiable(ct.constraint);
  if (sat == Tri::No) return Tri::Yes;
  if (sat == Tri::Unknown) return Tri::Unknown;
  return nf_term(ct.term, ct.constraint, vars(ct.constraint));
}

Tri Rewriter::is_normal_form(const CEquation& e) {
  Tri l = is_normal_form(CTerm{e.left, e.constraint});
  if (l == Tri::No) return Tri::No;
  Tri r = is_normal_form(CTerm{e.right, e.constraint});
  if (r == Tri::No) return Tri::No;
  return l == Tri::Yes && r == Tri::Yes ? Tri::Yes : Tri::Unknown;
}

// ---------------------------------------------------------------------------
// Ground steps

namespace {

std::vector<Value> domain_for(const Sort& s, const std::vector<Value>& given) {
  std::vector<Value> out;
  if (s.is_bool()) return {Value::boolean(false), Value::boolean(true)};
  if (s.is_bitvec() && s.width <= 4) {
    for (unsigned i = 0; i < (1u << s.width); ++i) out.push_back(Value::bitvec(BitVec(s.width, i)));
    return out;
  }
  for (const Value& v : given) {
    if (v.sort() == s) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<PlainStep> plain_step(const std::vector<Rule>& rules, const Term& s,
                                  const std::vector<Value>& extra_domain) {
  std::vector<PlainStep> out;
  for (const Position& p : fun_positions(s)) {
    const Term& u = subterm_at(s, p);
    if (u.is_value()) continue;
    if (u.symbol().is_theory()) {
      if (std::all_of(u.args().begin(), u.args().end(), [](const Term& a) { return a.is_value(); })) {
        out.push_back({replace_at(s, p, Term::value(interpret(u))), p, nullptr});
      }
      continue;
    }
    for (const Rule& rho : rules) {
      auto sigma = match(rho.lhs, u);
      if (!sigma) continue;
      bool ok = true;
      for (const Var& x : rho.logical_vars()) {
        const Term* b = sigma->find(x);
        if (b && !b->is_value()) ok = false;
      }
      if (!ok) continue;
      VarSet unbound = rho.unbound_vars();
      std::vector<Var> ys(unbound.begin(), unbound.end());
      std::vector<std::vector<Value>> doms;
      for (const Var& y : ys) doms.push_back(domain_for(y.sort, extra_domain));
      Subst full = *sigma;
      std::set<std::string> seen;
      std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == ys.size()) {
          if (!interpret(full.apply(rho.guard)).as_bool()) return;
          Term t = replace_at(s, p, full.apply(rho.rhs));
          if (seen.insert(t.to_string()).second) out.push_back({t, p, &rho});
          return;
        }
        for (const Value& v : doms[i]) {
          Subst saved = full;
          full.bind(ys[i], Term::value(v));
          go(i + 1);
          full = saved;
        }
      };
      go(0);
    }
  }
  return out;
}

std::vector<Term> plain_successors(const std::vector<Rule>& rules, const Term& s,
                                   const std::vector<Value>& extra_domain) {
  std::vector<Term> out;
  std::unordered_set<std::string> seen;
  for (PlainStep& st : plain_step(rules, s, extra_domain)) {
    if (seen.insert(st.result.to_string()).second) out.push_back(std::move(st.result));
  }
  return out;
}

}  // namespace lctrs
