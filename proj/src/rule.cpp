#include "lctrs/rule.hpp"

namespace lctrs {

VarSet Rule::all_vars() const {
  VarSet v;
  collect_vars(lhs, v);
  collect_vars(rhs, v);
  collect_vars(guard, v);
  return v;
}

VarSet Rule::logical_vars() const {
  VarSet out = vars(guard);
  VarSet l = vars(lhs);
  for (const Var& x : vars(rhs)) {
    if (!l.count(x)) out.insert(x);
  }
  return out;
}

VarSet Rule::extra_vars() const {
  VarSet l = vars(lhs);
  VarSet g = vars(guard);
  VarSet out;
  for (const Var& x : vars(rhs)) {
    if (!l.count(x) && !g.count(x)) out.insert(x);
  }
  return out;
}

VarSet Rule::unbound_vars() const {
  VarSet l = vars(lhs);
  VarSet out;
  for (const Var& x : vars(guard)) {
    if (!l.count(x)) out.insert(x);
  }
  for (const Var& x : vars(rhs)) {
    if (!l.count(x)) out.insert(x);
  }
  return out;
}

Term Rule::extra_var_constraint() const {
  std::vector<Term> cs;
  for (const Var& x : extra_vars()) cs.push_back(mk_eq(Term::var(x), Term::var(x)));
  return mk_and(cs);
}

std::string Rule::to_string() const {
  std::string s = lhs.to_string() + " -> " + rhs.to_string();
  if (!(guard.is_value() && guard.symbol().value->as_bool())) s += " [" + guard.to_string() + "]";
  return s;
}

Rule calculation_rule(const SymbolPtr& f) {
  std::vector<Term> xs;
  for (std::size_t i = 0; i < f->arity(); ++i) {
    xs.push_back(Term::var(fresh_var("x", f->arg_sorts[i])));
  }
  Term l = Term::app(f, xs);
  Term y = Term::var(fresh_var("y", f->result));
  Rule r(l, y, mk_eq(y, l), "calc(" + f->spelling() + ")");
  r.is_calculation = true;
  return r;
}

namespace {

Rule rename_with(const Rule& r, const VarSet& which) {
  Subst s;
  for (const Var& x : which) s.bind(x, Term::var(fresh_var(x.name, x.sort)));
  Rule out(s.apply(r.lhs), s.apply(r.rhs), s.apply(r.guard), r.name);
  out.is_calculation = r.is_calculation;
  return out;
}

bool renaming_into(const Term& pattern, const Term& subject, std::map<Var, Var>& fwd,
                   std::map<Var, Var>& bwd) {
  if (pattern.is_var() != subject.is_var()) return false;
  if (pattern.is_var()) {
    const Var& x = pattern.as_var();
    const Var& y = subject.as_var();
    if (!(x.sort == y.sort)) return false;
    auto f = fwd.find(x);
    auto b = bwd.find(y);
    if (f == fwd.end() && b == bwd.end()) {
      fwd[x] = y;
      bwd[y] = x;
      return true;
    }
    return f != fwd.end() && b != bwd.end() && f->second == y && b->second == x;
  }
  if (!(pattern.symbol() == subject.symbol())) return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i) {
    if (!renaming_into(pattern.arg(i), subject.arg(i), fwd, bwd)) return false;
  }
  return true;
}

bool linear_on_nonlogical(const Term& t, const VarSet& logical) {
  for (const auto& [x, n] : var_counts(t)) {
    if (n > 1 && !logical.count(x)) return false;
  }
  return true;
}

}  // namespace

Rule rename_apart(const Rule& r, const VarSet& forbidden) {
  // Fresh names are never reused, so renaming every variable also keeps
  // successive variants pairwise disjoint.
  (void)forbidden;
  return rename_with(r, r.all_vars());
}

Rule rename_fresh(const Rule& r) { return rename_with(r, r.all_vars()); }

bool is_variant(const Rule& a, const Rule& b) {
  std::map<Var, Var> fwd, bwd;
  return renaming_into(b.lhs, a.lhs, fwd, bwd) && renaming_into(b.rhs, a.rhs, fwd, bwd) &&
         renaming_into(b.guard, a.guard, fwd, bwd);
}

bool is_left_linear(const Rule& r) { return linear_on_nonlogical(r.lhs, r.logical_vars()); }

bool is_right_linear(const Rule& r) { return linear_on_nonlogical(r.rhs, r.logical_vars()); }

}  // namespace lctrs
