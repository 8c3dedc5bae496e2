#pragma once

#include "lctrs/error.hpp"
#include "lctrs/value.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace lctrs {

enum class SymbolKind { Term, Theory, Value };

/// A function symbol with its sort declaration. Theory symbols that are
/// polymorphic in SMT-LIB (`=`, `ite`, `bvadd`, ...) are instantiated per
/// occurrence, so every FunSym carries concrete sorts.
struct FunSym {
  std::string name;
  std::vector<unsigned> indices;  // `(_ extract 3 0)` and friends
  std::vector<Sort> arg_sorts;
  Sort result;
  SymbolKind kind = SymbolKind::Term;
  std::optional<Value> value;  // set iff kind == Value

  std::size_t arity() const { return arg_sorts.size(); }
  bool is_value() const { return kind == SymbolKind::Value; }
  bool is_theory() const { return kind != SymbolKind::Term; }
  /// Name as written in SMT-LIB, including indices.
  std::string spelling() const;

  bool operator==(const FunSym& o) const {
    return name == o.name && kind == o.kind && indices == o.indices && result == o.result &&
           arg_sorts == o.arg_sorts;
  }
};

using SymbolPtr = std::shared_ptr<const FunSym>;

SymbolPtr make_symbol(std::string name, std::vector<Sort> args, Sort result,
                      SymbolKind kind = SymbolKind::Term);
SymbolPtr make_value_symbol(const Value& v);

struct Var {
  std::string name;
  Sort sort;

  auto operator<=>(const Var&) const = default;
};

using VarSet = std::set<Var>;

/// Fresh variable `base'N` from a process-wide counter. The apostrophe is not
/// a legal character in ARI identifiers, so fresh names never clash with
/// user variables.
Var fresh_var(const std::string& base, const Sort& sort);

/// Immutable first-order term with structural equality; subterms are shared.
class Term {
 public:
  Term() = default;  // an empty handle; only valid as a placeholder

  static Term var(Var v);
  /// Checks arity and argument sorts. Throws ArityMismatch / SortMismatch.
  static Term app(SymbolPtr f, std::vector<Term> args = {});
  static Term value(const Value& v);

  bool valid() const { return node_ != nullptr; }
  bool is_var() const;
  bool is_app() const { return !is_var(); }
  const Var& as_var() const;
  const FunSym& symbol() const;
  const SymbolPtr& symbol_ptr() const;
  std::span<const Term> args() const;
  const Term& arg(std::size_t i) const { return args()[i]; }
  const Sort& sort() const;

  /// True iff the term is a single value symbol.
  bool is_value() const;
  /// True iff every symbol is a theory or value symbol (variables allowed).
  bool is_logical() const;
  bool is_ground() const;
  std::size_t size() const;
  std::size_t hash() const;

  /// S-expression in SMT-LIB syntax.
  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator<(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& os, const Term& t);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

using Position = std::vector<unsigned>;
std::string to_string(const Position& p);
bool is_prefix(const Position& p, const Position& q);
bool parallel(const Position& p, const Position& q);

/// t|_p; throws PositionOutOfRange.
const Term& subterm_at(const Term& t, const Position& p);
/// t[u]_p; throws PositionOutOfRange or SortMismatch.
Term replace_at(const Term& t, const Position& p, const Term& u);
/// All positions in pre-order (root first, then left to right).
std::vector<Position> positions(const Term& t);
/// Positions carrying a function symbol.
std::vector<Position> fun_positions(const Term& t);

void collect_vars(const Term& t, VarSet& out);
VarSet vars(const Term& t);
/// Variables in order of first occurrence (left to right).
std::vector<Var> vars_in_order(const Term& t);
bool occurs(const Var& x, const Term& t);
/// The number of occurrences of each variable.
std::map<Var, int> var_counts(const Term& t);

class Subst {
 public:
  Subst() = default;

  bool contains(const Var& x) const { return map_.count(x) != 0; }
  const Term* find(const Var& x) const;
  void bind(const Var& x, Term t);
  const std::map<Var, Term>& bindings() const { return map_; }
  bool empty() const { return map_.empty(); }

  /// Variables that are not mapped to themselves.
  VarSet domain() const;
  Term apply(const Term& t) const;
  /// (this ∘ other): first other, then this.
  Subst compose_after(const Subst& other) const;

  std::string to_string() const;
  bool operator==(const Subst&) const = default;

 private:
  std::map<Var, Term> map_;
};

/// sigma with pattern·sigma == subject and Dom(sigma) ⊆ Var(pattern).
std::optional<Subst> match(const Term& pattern, const Term& subject);
/// Extends an existing matcher.
bool match_into(const Term& pattern, const Term& subject, Subst& sigma);

/// Idempotent most general unifier of a set of equations, additionally
/// requiring sigma(x) to be a value or a variable for x in value_restricted.
std::optional<Subst> unify_all(const std::vector<std::pair<Term, Term>>& eqs,
                               const VarSet& value_restricted = {});
std::optional<Subst> unify(const Term& s, const Term& t, const VarSet& value_restricted = {});

/// Boolean connectives used when building constraints. `mk_and` flattens
/// nested conjunctions, drops `true` and duplicate conjuncts.
Term mk_true();
Term mk_false();
Term mk_and(const std::vector<Term>& conjuncts);
Term mk_and(const Term& a, const Term& b);
Term mk_or(const Term& a, const Term& b);
Term mk_not(const Term& a);
Term mk_eq(const Term& a, const Term& b);
Term mk_implies(const Term& a, const Term& b);
/// Top-level conjuncts of a constraint (`true` yields none).
std::vector<Term> conjuncts(const Term& phi);

}  // namespace lctrs
