#include "lctrs/term.hpp"

#include <atomic>
#include <ostream>
#include <sstream>

namespace lctrs {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::PositionOutOfRange: return "PositionOutOfRange";
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::NotGroundLogical: return "NotGroundLogical";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownTheory: return "UnknownTheory";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::SortInferenceFailure: return "SortInferenceFailure";
    case ErrorKind::IllegalRuleRoot: return "IllegalRuleRoot";
    case ErrorKind::UnsupportedFeature: return "UnsupportedFeature";
    case ErrorKind::SplitVariableEscape: return "SplitVariableEscape";
    case ErrorKind::SolverCrashed: return "SolverCrashed";
    case ErrorKind::SolverTimeout: return "SolverTimeout";
    case ErrorKind::StrategyParseError: return "StrategyParseError";
  }
  return "Error";
}

std::string FunSym::spelling() const {
  if (indices.empty()) return name;
  std::string s = "(_ " + name;
  for (unsigned i : indices) s += " " + std::to_string(i);
  return s + ")";
}

SymbolPtr make_symbol(std::string name, std::vector<Sort> args, Sort result, SymbolKind kind) {
  auto f = std::make_shared<FunSym>();
  f->name = std::move(name);
  f->arg_sorts = std::move(args);
  f->result = std::move(result);
  f->kind = kind;
  return f;
}

SymbolPtr make_value_symbol(const Value& v) {
  auto f = std::make_shared<FunSym>();
  f->name = v.to_smtlib();
  f->result = v.sort();
  f->kind = SymbolKind::Value;
  f->value = v;
  return f;
}

Var fresh_var(const std::string& base, const Sort& sort) {
  static std::atomic<unsigned long> counter{0};
  std::string stem = base.substr(0, base.find('\''));
  if (stem.empty()) stem = "v";
  return Var{stem + "'" + std::to_string(counter.fetch_add(1)), sort};
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  std::optional<Var> var;
  SymbolPtr sym;
  std::vector<Term> args;
  Sort sort;
  std::size_t hash = 0;
  std::size_t size = 1;
  bool ground = true;
  bool logical = true;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Term Term::var(Var v) {
  auto n = std::make_shared<Node>();
  n->sort = v.sort;
  n->hash = mix(std::hash<std::string>{}(v.name), 17);
  n->ground = false;
  n->var = std::move(v);
  return Term(std::move(n));
}

Term Term::app(SymbolPtr f, std::vector<Term> args) {
  if (args.size() != f->arity()) {
    throw Error(ErrorKind::ArityMismatch, f->spelling() + " expects " + std::to_string(f->arity()) +
                                              " arguments, got " + std::to_string(args.size()));
  }
  auto n = std::make_shared<Node>();
  n->hash = mix(std::hash<std::string>{}(f->name), f->result.width);
  n->logical = f->is_theory();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!(args[i].sort() == f->arg_sorts[i])) {
      throw Error(ErrorKind::SortMismatch, "argument " + std::to_string(i + 1) + " of " +
                                               f->spelling() + " has sort " +
                                               args[i].sort().to_string() + ", expected " +
                                               f->arg_sorts[i].to_string());
    }
    n->hash = mix(n->hash, args[i].hash());
    n->size += args[i].size();
    n->ground = n->ground && args[i].is_ground();
    n->logical = n->logical && args[i].is_logical();
  }
  n->sort = f->result;
  n->sym = std::move(f);
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::value(const Value& v) { return app(make_value_symbol(v)); }

bool Term::is_var() const { return node_->var.has_value(); }
const Var& Term::as_var() const { return *node_->var; }
const FunSym& Term::symbol() const { return *node_->sym; }
const SymbolPtr& Term::symbol_ptr() const { return node_->sym; }
std::span<const Term> Term::args() const { return node_->args; }
const Sort& Term::sort() const { return node_->sort; }
bool Term::is_value() const { return !is_var() && node_->sym->is_value(); }
bool Term::is_logical() const { return node_->logical; }
bool Term::is_ground() const { return node_->ground; }
std::size_t Term::size() const { return node_->size; }
std::size_t Term::hash() const { return node_->hash; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) return a.as_var() == b.as_var();
  if (!(a.symbol() == b.symbol())) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (!(a.arg(i) == b.arg(i))) return false;
  }
  return true;
}

bool operator<(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return false;
  if (a.is_var() != b.is_var()) return a.is_var();
  if (a.is_var()) return a.as_var() < b.as_var();
  const FunSym& f = a.symbol();
  const FunSym& g = b.symbol();
  if (f.name != g.name) return f.name < g.name;
  if (f.indices != g.indices) return f.indices < g.indices;
  if (!(f.result == g.result)) return f.result < g.result;
  if (f.arity() != g.arity()) return f.arity() < g.arity();
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (a.arg(i) < b.arg(i)) return true;
    if (b.arg(i) < a.arg(i)) return false;
  }
  return false;
}

namespace {

void print(std::ostream& os, const Term& t) {
  if (t.is_var()) {
    os << t.as_var().name;
    return;
  }
  if (t.args().empty()) {
    os << t.symbol().spelling();
    return;
  }
  os << '(' << t.symbol().spelling();
  for (const Term& a : t.args()) {
    os << ' ';
    print(os, a);
  }
  os << ')';
}

}  // namespace

std::string Term::to_string() const {
  std::ostringstream os;
  print(os, *this);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  print(os, t);
  return os;
}

// ---------------------------------------------------------------------------
// Positions

std::string to_string(const Position& p) {
  if (p.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i]);
  }
  return s;
}

bool is_prefix(const Position& p, const Position& q) {
  return p.size() <= q.size() && std::equal(p.begin(), p.end(), q.begin());
}

bool parallel(const Position& p, const Position& q) { return !is_prefix(p, q) && !is_prefix(q, p); }

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (unsigned i : p) {
    if (cur->is_var() || i == 0 || i > cur->args().size()) {
      throw Error(ErrorKind::PositionOutOfRange, to_string(p) + " in " + t.to_string());
    }
    cur = &cur->arg(i - 1);
  }
  return *cur;
}

namespace {

Term replace_rec(const Term& t, const Position& p, std::size_t depth, const Term& u) {
  if (depth == p.size()) {
    if (!(t.sort() == u.sort())) {
      throw Error(ErrorKind::SortMismatch, "cannot replace " + t.to_string() + " by " +
                                               u.to_string() + " of sort " + u.sort().to_string());
    }
    return u;
  }
  unsigned i = p[depth];
  if (t.is_var() || i == 0 || i > t.args().size()) {
    throw Error(ErrorKind::PositionOutOfRange, to_string(p));
  }
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[i - 1] = replace_rec(args[i - 1], p, depth + 1, u);
  return Term::app(t.symbol_ptr(), std::move(args));
}

void positions_rec(const Term& t, Position& cur, std::vector<Position>& out, bool fun_only) {
  if (!fun_only || t.is_app()) out.push_back(cur);
  if (t.is_var()) return;
  for (unsigned i = 0; i < t.args().size(); ++i) {
    cur.push_back(i + 1);
    positions_rec(t.arg(i), cur, out, fun_only);
    cur.pop_back();
  }
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& u) { return replace_rec(t, p, 0, u); }

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  positions_rec(t, cur, out, false);
  return out;
}

std::vector<Position> fun_positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  positions_rec(t, cur, out, true);
  return out;
}

void collect_vars(const Term& t, VarSet& out) {
  if (t.is_ground()) return;
  if (t.is_var()) {
    out.insert(t.as_var());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

VarSet vars(const Term& t) {
  VarSet out;
  collect_vars(t, out);
  return out;
}

namespace {

void vars_in_order_rec(const Term& t, std::vector<Var>& out, VarSet& seen) {
  if (t.is_ground()) return;
  if (t.is_var()) {
    if (seen.insert(t.as_var()).second) out.push_back(t.as_var());
    return;
  }
  for (const Term& a : t.args()) vars_in_order_rec(a, out, seen);
}

void count_rec(const Term& t, std::map<Var, int>& out) {
  if (t.is_ground()) return;
  if (t.is_var()) {
    ++out[t.as_var()];
    return;
  }
  for (const Term& a : t.args()) count_rec(a, out);
}

}  // namespace

std::vector<Var> vars_in_order(const Term& t) {
  std::vector<Var> out;
  VarSet seen;
  vars_in_order_rec(t, out, seen);
  return out;
}

bool occurs(const Var& x, const Term& t) {
  if (t.is_ground()) return false;
  if (t.is_var()) return t.as_var() == x;
  for (const Term& a : t.args()) {
    if (occurs(x, a)) return true;
  }
  return false;
}

std::map<Var, int> var_counts(const Term& t) {
  std::map<Var, int> out;
  count_rec(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitutions

const Term* Subst::find(const Var& x) const {
  auto it = map_.find(x);
  return it == map_.end() ? nullptr : &it->second;
}

void Subst::bind(const Var& x, Term t) {
  if (!(x.sort == t.sort())) {
    throw Error(ErrorKind::SortMismatch, "binding " + x.name + " to " + t.to_string());
  }
  map_[x] = std::move(t);
}

VarSet Subst::domain() const {
  VarSet d;
  for (const auto& [x, t] : map_) {
    if (!(t.is_var() && t.as_var() == x)) d.insert(x);
  }
  return d;
}

Term Subst::apply(const Term& t) const {
  if (map_.empty() || t.is_ground()) return t;
  if (t.is_var()) {
    const Term* u = find(t.as_var());
    return u ? *u : t;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply(a));
    changed = changed || !(args.back() == a);
  }
  if (!changed) return t;
  return Term::app(t.symbol_ptr(), std::move(args));
}

Subst Subst::compose_after(const Subst& other) const {
  Subst out;
  for (const auto& [x, t] : other.map_) out.map_[x] = apply(t);
  for (const auto& [x, t] : map_) {
    if (!out.contains(x)) out.map_[x] = t;
  }
  return out;
}

std::string Subst::to_string() const {
  std::string s = "{";
  bool first = true;
  for (const auto& [x, t] : map_) {
    if (!first) s += ", ";
    first = false;
    s += x.name + " -> " + t.to_string();
  }
  return s + "}";
}

bool match_into(const Term& pattern, const Term& subject, Subst& sigma) {
  if (!(pattern.sort() == subject.sort())) return false;
  if (pattern.is_var()) {
    if (const Term* bound = sigma.find(pattern.as_var())) return *bound == subject;
    sigma.bind(pattern.as_var(), subject);
    return true;
  }
  if (subject.is_var() || !(pattern.symbol() == subject.symbol())) return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i) {
    if (!match_into(pattern.arg(i), subject.arg(i), sigma)) return false;
  }
  return true;
}

std::optional<Subst> match(const Term& pattern, const Term& subject) {
  Subst sigma;
  if (!match_into(pattern, subject, sigma)) return std::nullopt;
  return sigma;
}

std::optional<Subst> unify_all(const std::vector<std::pair<Term, Term>>& eqs,
                               const VarSet& value_restricted) {
  std::map<Var, Term> sol;
  auto resolve = [&](const Term& t) {
    Subst s;
    for (const auto& [x, u] : sol) s.bind(x, u);
    return s.apply(t);
  };
  std::vector<std::pair<Term, Term>> todo(eqs.rbegin(), eqs.rend());
  while (!todo.empty()) {
    auto [a, b] = todo.back();
    todo.pop_back();
    Term s = resolve(a);
    Term t = resolve(b);
    if (!(s.sort() == t.sort())) return std::nullopt;
    if (s == t) continue;
    if (!s.is_var() && t.is_var()) std::swap(s, t);
    if (s.is_var()) {
      const Var& x = s.as_var();
      if (occurs(x, t)) return std::nullopt;
      Subst single;
      single.bind(x, t);
      for (auto& [y, u] : sol) u = single.apply(u);
      sol[x] = t;
      continue;
    }
    if (!(s.symbol() == t.symbol())) return std::nullopt;
    for (std::size_t i = s.args().size(); i-- > 0;) todo.emplace_back(s.arg(i), t.arg(i));
  }
  Subst out;
  for (const auto& [x, u] : sol) out.bind(x, u);
  for (const Var& x : value_restricted) {
    const Term* u = out.find(x);
    if (u && !u->is_var() && !u->is_value()) return std::nullopt;
  }
  return out;
}

std::optional<Subst> unify(const Term& s, const Term& t, const VarSet& value_restricted) {
  return unify_all({{s, t}}, value_restricted);
}

// ---------------------------------------------------------------------------
// Core connectives

namespace {

SymbolPtr bool_op(const std::string& name, std::size_t n) {
  return make_symbol(name, std::vector<Sort>(n, Sort::boolean()), Sort::boolean(),
                     SymbolKind::Theory);
}

bool is_op(const Term& t, const char* name) { return t.is_app() && t.symbol().name == name && !t.symbol().is_value(); }

void flatten_and(const Term& t, std::vector<Term>& out) {
  if (is_op(t, "and")) {
    for (const Term& a : t.args()) flatten_and(a, out);
    return;
  }
  if (t.is_value() && t.symbol().value->as_bool()) return;
  for (const Term& u : out) {
    if (u == t) return;
  }
  out.push_back(t);
}

}  // namespace

Term mk_true() { return Term::value(Value::boolean(true)); }
Term mk_false() { return Term::value(Value::boolean(false)); }

Term mk_and(const std::vector<Term>& cs) {
  std::vector<Term> flat;
  for (const Term& c : cs) flatten_and(c, flat);
  if (flat.empty()) return mk_true();
  if (flat.size() == 1) return flat.front();
  std::size_t n = flat.size();
  return Term::app(bool_op("and", n), std::move(flat));
}

Term mk_and(const Term& a, const Term& b) { return mk_and(std::vector<Term>{a, b}); }

Term mk_or(const Term& a, const Term& b) { return Term::app(bool_op("or", 2), {a, b}); }

Term mk_not(const Term& a) { return Term::app(bool_op("not", 1), {a}); }

Term mk_implies(const Term& a, const Term& b) { return Term::app(bool_op("=>", 2), {a, b}); }

Term mk_eq(const Term& a, const Term& b) {
  return Term::app(make_symbol("=", {a.sort(), b.sort()}, Sort::boolean(), SymbolKind::Theory),
                   {a, b});
}

std::vector<Term> conjuncts(const Term& phi) {
  std::vector<Term> out;
  flatten_and(phi, out);
  return out;
}

}  // namespace lctrs
