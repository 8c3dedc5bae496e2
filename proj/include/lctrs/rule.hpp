#pragma once

#include "lctrs/term.hpp"

#include <string>
#include <vector>

namespace lctrs {

/// A constrained rewrite rule `lhs -> rhs [guard]`.
struct Rule {
  Term lhs;
  Term rhs;
  Term guard;
  bool is_calculation = false;
  std::string name;  // for proofs; "calc(+)" for calculation rules

  Rule() = default;
  Rule(Term l, Term r, Term g, std::string n = {})
      : lhs(std::move(l)), rhs(std::move(r)), guard(std::move(g)), name(std::move(n)) {}

  VarSet all_vars() const;
  /// Var(guard) ∪ (Var(rhs) \ Var(lhs))
  VarSet logical_vars() const;
  /// Var(rhs) \ (Var(lhs) ∪ Var(guard))
  VarSet extra_vars() const;
  /// Variables that the matcher of the lhs does not bind:
  /// (Var(guard) ∪ Var(rhs)) \ Var(lhs).
  VarSet unbound_vars() const;
  /// ⋀ { x = x | x ∈ EVar }
  Term extra_var_constraint() const;

  std::string to_string() const;
  bool operator==(const Rule& o) const {
    return lhs == o.lhs && rhs == o.rhs && guard == o.guard;
  }
};

/// The calculation rule f(x1..xn) -> y [y = f(x1..xn)] of a theory symbol.
Rule calculation_rule(const SymbolPtr& f);
/// One calculation rule per non-value theory symbol instance occurring in
/// the rules, in order of first occurrence.
std::vector<Rule> calculation_rules(const std::vector<Rule>& rules);

/// A variant of the rule whose variables avoid `forbidden`; the renaming is
/// a bijection onto fresh variables.
Rule rename_apart(const Rule& r, const VarSet& forbidden);
/// Renames every variable, regardless of clashes.
Rule rename_fresh(const Rule& r);

/// Renaming (variable-to-variable bijection) mapping b onto a, if one exists,
/// such that lhs, rhs and guard coincide.
bool is_variant(const Rule& a, const Rule& b);

/// Non-logical variables occur at most once in the lhs.
bool is_left_linear(const Rule& r);
/// Non-logical variables occur at most once in the rhs.
bool is_right_linear(const Rule& r);

}  // namespace lctrs
