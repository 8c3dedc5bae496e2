#pragma once

#include "lctrs/rewriting.hpp"
#include "lctrs/rule.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lctrs {

/// Merges rules ℓ1 → r1 [φ1], ℓ2 → r2 [φ2] into ℓ1 → r1 [φ1 ∨ φ2σ] whenever
/// a renaming σ gives ℓ1 = ℓ2σ, r1 = r2σ and Var(φ1) = Var(φ2σ). Pairs are
/// considered in index order and the process repeats until no pair merges.
std::vector<Rule> merge_rules(const std::vector<Rule>& rules);

/// The renaming σ used by merge_rules, if the two rules are mergeable.
std::optional<Subst> merge_renaming(const Rule& r1, const Rule& r2);

/// A constrained (parallel) critical pair left ≈ right [constraint]. The left
/// side comes from the inner step(s), the right side from the root step.
struct CriticalPair {
  enum Kind { CCP, CPCP } kind = CCP;
  CEquation eq;
  bool overlay = false;
  std::string outer;               // root rule
  std::vector<std::string> inner;  // rules at `positions`
  std::vector<Position> positions;
  Term peak;       // the common source, ℓσ
  bool vacuous = false;  // the constraint was found unsatisfiable
  unsigned depth = 0;    // number of splits leading to this pair

  /// `(ccp lhs rhs :guard φ :overlay bool)` or `(cpcp ... :positions (...))`.
  std::string to_sexp() const;
};

struct CriticalPairLimits {
  std::size_t max_cpcps = 20000;
};

/// All CCPs of R_rc, where `rules` holds R (calculation rules are generated
/// from the symbols occurring in R). Pairs whose satisfiability check is
/// Unknown are kept.
std::vector<CriticalPair> compute_ccps(const std::vector<Rule>& rules, Rewriter& rw);

/// All constrained parallel critical pairs. `truncated` is set when the cap
/// was hit; the result is then incomplete.
std::vector<CriticalPair> compute_cpcps(const std::vector<Rule>& rules, Rewriter& rw, bool* truncated = nullptr,
                                        CriticalPairLimits limits = {});

/// The two halves s ≈ t [φ ∧ ψ] and s ≈ t [φ ∧ ¬ψ]. Throws
/// SplitVariableEscape unless Var(ψ) ⊆ Var(φ).
std::pair<CriticalPair, CriticalPair> split_pair(const CriticalPair& cp, const Term& psi, Rewriter& rw);
/// pairs with pairs[i] replaced by its two halves (appended at the end).
std::vector<CriticalPair> split_ccp(std::vector<CriticalPair> pairs, std::size_t i, const Term& psi, Rewriter& rw);

/// Guards ψ'σ of rules matching a subterm of either side, such that φ ∧ ψ'σ
/// is satisfiable and not entailed by φ, in position order (left side first).
std::vector<Term> split_candidates(const CriticalPair& cp, Rewriter& rw);
std::optional<Term> choose_split_constraint(const CriticalPair& cp, Rewriter& rw);

}  // namespace lctrs
