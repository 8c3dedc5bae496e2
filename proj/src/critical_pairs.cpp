#include "lctrs/critical_pairs.hpp"

#include <algorithm>
#include <functional>

namespace lctrs {

std::string CriticalPair::to_sexp() const {
  std::string s = std::string(kind == CCP ? "(ccp " : "(cpcp ") + eq.left.to_string() + " " + eq.right.to_string() +
                  " :guard " + eq.constraint.to_string() + " :overlay " + (overlay ? "true" : "false");
  if (kind == CPCP) {
    s += " :positions (";
    for (std::size_t i = 0; i < positions.size(); ++i) s += (i ? " " : "") + to_string(positions[i]);
    s += ")";
  }
  return s + ")";
}

namespace {

VarSet lvars_union(const std::vector<const Rule*>& rs) {
  VarSet out;
  for (const Rule* r : rs) {
    VarSet l = r->logical_vars();
    out.insert(l.begin(), l.end());
  }
  return out;
}

bool root_excluded(const Rule& outer, const Rule& inner) {
  if (!is_variant(outer, inner)) return false;
  VarSet lv = vars(inner.lhs);
  for (const Var& x : vars(inner.rhs)) {
    if (!lv.count(x)) return false;
  }
  return true;
}

std::vector<Rule> with_calculations(const std::vector<Rule>& rules) {
  std::vector<Rule> out = rules;
  for (Rule& c : calculation_rules(rules)) out.push_back(std::move(c));
  return out;
}

}  // namespace

std::vector<CriticalPair> compute_ccps(const std::vector<Rule>& rules, Rewriter& rw) {
  std::vector<CriticalPair> out;
  std::vector<Rule> rc = with_calculations(rules);
  // overlaps ⟨ρ1, p, ρ2⟩ in the order of the inner rule ρ1
  for (const Rule& inner_rule : rc) {
    for (const Rule& outer_rule : rc) {
      if (outer_rule.is_calculation) continue;  // only variables below the root
      Rule r2 = rename_fresh(outer_rule);
      for (const Position& p : fun_positions(r2.lhs)) {
        const Term& u = subterm_at(r2.lhs, p);
        if (u.is_value() || !(inner_rule.lhs.symbol() == u.symbol())) continue;
        if (p.empty() && root_excluded(outer_rule, inner_rule)) continue;
        Rule r1 = rename_fresh(inner_rule);
        auto sigma = unify(r1.lhs, u, lvars_union({&r1, &r2}));
        if (!sigma) continue;
        Term guards = mk_and(sigma->apply(r1.guard), sigma->apply(r2.guard));
        Tri sat = rw.satisfiable(guards);
        if (sat == Tri::No) continue;
        CriticalPair cp;
        cp.kind = CriticalPair::CCP;
        cp.peak = sigma->apply(r2.lhs);
        cp.eq.left = replace_at(cp.peak, p, sigma->apply(r1.rhs));
        cp.eq.right = sigma->apply(r2.rhs);
        cp.eq.constraint = mk_and({guards, sigma->apply(r1.extra_var_constraint()),
                                   sigma->apply(r2.extra_var_constraint())});
        cp.overlay = p.empty();
        cp.outer = outer_rule.name;
        cp.inner = {inner_rule.name};
        cp.positions = {p};
        out.push_back(std::move(cp));
      }
    }
  }
  return out;
}

std::vector<CriticalPair> compute_cpcps(const std::vector<Rule>& rules, Rewriter& rw, bool* truncated,
                                        CriticalPairLimits limits) {
  std::vector<CriticalPair> out;
  if (truncated) *truncated = false;
  std::vector<Rule> rc = with_calculations(rules);
  for (const Rule& outer_rule : rc) {
    if (outer_rule.is_calculation) continue;
    Rule r = rename_fresh(outer_rule);
    // bottom up: the rules that unify on their own at each position
    struct Option {
      Position pos;
      const Rule* original;
      Rule variant;
    };
    std::vector<Option> options;
    for (const Position& p : fun_positions(r.lhs)) {
      const Term& u = subterm_at(r.lhs, p);
      if (u.is_value()) continue;
      for (const Rule& inner_rule : rc) {
        if (!(inner_rule.lhs.symbol() == u.symbol())) continue;
        Rule v = rename_fresh(inner_rule);
        if (!unify(v.lhs, u, lvars_union({&v, &r}))) continue;
        options.push_back({p, &inner_rule, std::move(v)});
      }
    }
    std::vector<const Option*> chosen;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
      if (out.size() >= limits.max_cpcps) {
        if (truncated) *truncated = true;
        return;
      }
      if (i == options.size()) {
        if (chosen.empty()) return;
        if (chosen.size() == 1 && chosen[0]->pos.empty() && root_excluded(outer_rule, *chosen[0]->original)) return;
        std::vector<std::pair<Term, Term>> eqs;
        std::vector<const Rule*> involved{&r};
        for (const Option* o : chosen) {
          eqs.emplace_back(o->variant.lhs, subterm_at(r.lhs, o->pos));
          involved.push_back(&o->variant);
        }
        auto sigma = unify_all(eqs, lvars_union(involved));
        if (!sigma) return;
        std::vector<Term> guards{sigma->apply(r.guard)};
        for (const Option* o : chosen) guards.push_back(sigma->apply(o->variant.guard));
        Term phi = mk_and(guards);
        if (rw.satisfiable(phi) == Tri::No) return;
        std::vector<Term> all{phi, sigma->apply(r.extra_var_constraint())};
        CriticalPair cp;
        cp.kind = CriticalPair::CPCP;
        cp.peak = sigma->apply(r.lhs);
        Term left = cp.peak;
        for (const Option* o : chosen) {
          left = replace_at(left, o->pos, sigma->apply(o->variant.rhs));
          all.push_back(sigma->apply(o->variant.extra_var_constraint()));
          cp.inner.push_back(o->original->name);
          cp.positions.push_back(o->pos);
        }
        cp.eq = CEquation{left, sigma->apply(r.rhs), mk_and(all)};
        cp.overlay = chosen.size() == 1 && chosen[0]->pos.empty();
        cp.outer = outer_rule.name;
        out.push_back(std::move(cp));
        return;
      }
      go(i + 1);
      const Option& o = options[i];
      for (const Option* c : chosen) {
        if (!parallel(c->pos, o.pos)) return;
      }
      chosen.push_back(&o);
      go(i + 1);
      chosen.pop_back();
    };
    go(0);
  }
  return out;
}

std::pair<CriticalPair, CriticalPair> split_pair(const CriticalPair& cp, const Term& psi, Rewriter& rw) {
  VarSet pv = vars(cp.eq.constraint);
  for (const Var& x : vars(psi)) {
    if (!pv.count(x)) {
      throw Error(ErrorKind::SplitVariableEscape, "variable " + x.name + " of " + psi.to_string() +
                                                      " does not occur in " + cp.eq.constraint.to_string());
    }
  }
  std::pair<CriticalPair, CriticalPair> halves{cp, cp};
  halves.first.eq.constraint = mk_and(cp.eq.constraint, psi);
  halves.second.eq.constraint = mk_and(cp.eq.constraint, mk_not(psi));
  for (CriticalPair* h : {&halves.first, &halves.second}) {
    h->depth = cp.depth + 1;
    h->vacuous = rw.satisfiable(h->eq.constraint) == Tri::No;
  }
  return halves;
}

std::vector<CriticalPair> split_ccp(std::vector<CriticalPair> pairs, std::size_t i, const Term& psi, Rewriter& rw) {
  auto [a, b] = split_pair(pairs.at(i), psi, rw);
  pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(i));
  pairs.push_back(std::move(a));
  pairs.push_back(std::move(b));
  return pairs;
}

std::vector<Term> split_candidates(const CriticalPair& cp, Rewriter& rw) {
  std::vector<Term> out;
  const Term& phi = cp.eq.constraint;
  VarSet pv = vars(phi);
  auto leafish = [&](const Term& t) { return t.is_value() || (t.is_var() && pv.count(t.as_var())); };
  for (const Term* side : {&cp.eq.left, &cp.eq.right}) {
    for (const Position& p : fun_positions(*side)) {
      const Term& u = subterm_at(*side, p);
      if (u.is_value() || u.symbol().is_theory()) continue;
      for (const Rule& rho : rw.rules()) {
        if (!(rho.lhs.symbol() == u.symbol())) continue;
        auto sigma = match(rho.lhs, u);
        if (!sigma) continue;
        bool ok = true;
        for (const Var& x : rho.logical_vars()) {
          const Term* b = sigma->find(x);
          if (b && !leafish(*b)) ok = false;
        }
        Term psi = sigma->apply(rho.guard);
        for (const Var& x : vars(psi)) {
          if (!pv.count(x)) ok = false;
        }
        if (!ok || psi == mk_true()) continue;
        if (std::find(out.begin(), out.end(), psi) != out.end()) continue;
        if (rw.satisfiable(mk_and(phi, psi)) != Tri::Yes) continue;
        if (rw.valid(mk_implies(phi, psi)) != Tri::No) continue;
        out.push_back(psi);
      }
    }
  }
  return out;
}

std::optional<Term> choose_split_constraint(const CriticalPair& cp, Rewriter& rw) {
  auto c = split_candidates(cp, rw);
  if (c.empty()) return std::nullopt;
  return c.front();
}

}  // namespace lctrs
