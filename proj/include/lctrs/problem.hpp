#pragma once

#include "lctrs/rule.hpp"
#include "lctrs/theory.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lctrs {

enum class Format { LCTRS, TRS, MSTRS };

struct Problem {
  Format format = Format::LCTRS;
  TheoryKind theory = TheoryKind::Core;
  std::vector<Sort> sorts;  // user-declared sorts, in order
  std::vector<SymbolPtr> signature;  // term symbols, in declaration order
  std::vector<Rule> rules;
  std::vector<std::string> meta;  // comment lines

  const Theory& th() const { return Theory::get(theory); }
  SymbolPtr find_symbol(const std::string& name) const;
  /// Root symbols of the rules' left-hand sides, in order of first occurrence.
  std::vector<SymbolPtr> defined_symbols() const;
  /// The calculation rules for every non-value theory symbol occurring in
  /// the rules (one per concrete instance).
  std::vector<Rule> calculation_rules() const;
  /// rules followed by calculation_rules()
  std::vector<Rule> rules_with_calculations() const;
};

/// Parses an ARI problem (LCTRS, TRS or MSTRS) and infers all sorts.
Problem parse_problem(std::string_view text);
/// Terms over the signature of p. A variable name denotes the same variable
/// in all texts, so sorts are inferred jointly.
std::vector<Term> parse_terms(const Problem& p, const std::vector<std::string>& texts);
/// Fully sorted ARI text; every rule carries a `:var` declaration.
std::string print_problem(const Problem& p);
/// Moves lhs values into guards, then merges rules to a fixpoint.
Problem preprocess(const Problem& p);
/// Only the first half of `preprocess`.
Rule move_lhs_values(const Rule& r);

}  // namespace lctrs
