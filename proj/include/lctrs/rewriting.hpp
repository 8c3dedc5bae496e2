#pragma once

#include "lctrs/rule.hpp"
#include "lctrs/smt.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lctrs {

enum class Tri { Yes, No, Unknown };
const char* to_string(Tri t);

struct CTerm {
  Term term;
  Term constraint;

  std::string to_string() const;
  bool operator==(const CTerm&) const = default;
};

/// s ≈ t [φ]
struct CEquation {
  Term left;
  Term right;
  Term constraint;

  std::string to_string() const;
  std::string key() const { return to_string(); }
  bool operator==(const CEquation&) const = default;
};

enum class Side { Left, Right };

struct StepInfo {
  enum Kind { Single, Calculation, Parallel, Multi } kind = Single;
  std::vector<Position> positions;
  std::vector<std::string> rules;  // rule names, parallel to positions
};

struct RewriteLimits {
  unsigned max_steps = 4;             // ⇝ steps per side in closing searches
  unsigned multistep_depth = 2;       // nesting bound of ⇾
  std::size_t max_parallel = 512;     // ⇻ / ⇾ successors per term
  std::size_t max_states = 2000;      // states visited per closing search
};

/// Constrained rewriting with R ∪ R_ca. Logical queries go to the session
/// passed in; SMT Unknown makes a step inapplicable and sets `incomplete`.
class Rewriter {
 public:
  Rewriter(std::vector<Rule> rules, SmtSession& smt, RewriteLimits limits = {});

  const std::vector<Rule>& rules() const { return rules_; }
  SmtSession& smt() { return smt_; }
  const RewriteLimits& limits() const { return limits_; }
  /// Set whenever an SMT query came back Unknown or failed.
  bool incomplete() const { return incomplete_; }

  Tri satisfiable(const Term& phi);
  Tri valid(const Term& phi);

  /// s[φ] ⇝ s[rσ]_p [φ'] with ρ at position p, if applicable.
  std::optional<CTerm> constrained_step(const CTerm& ct, const Position& p, const Rule& rho);
  /// Calculation step at p; a redex with only value arguments is replaced by
  /// its value, otherwise by a fresh variable x with x = f(...) added.
  std::optional<CTerm> calc_step(const CTerm& ct, const Position& p);
  /// All single ⇝ successors (rule and calculation steps) at every position.
  std::vector<std::pair<CTerm, StepInfo>> steps(const CTerm& ct);
  /// Simultaneous steps at the given parallel positions with the given rules
  /// (a null rule pointer means a calculation step).
  std::optional<CTerm> parallel_step(const CTerm& ct, const std::vector<std::pair<Position, const Rule*>>& redexes);
  /// All ⇻ successors, including ct itself.
  std::vector<CTerm> parallel_steps(const CTerm& ct);
  /// The same, each with the set of positions rewritten.
  std::vector<std::pair<CTerm, std::vector<Position>>> parallel_steps_at(const CTerm& ct);
  /// All ⇾ successors up to the nesting bound, including ct itself.
  std::vector<CTerm> multisteps(const CTerm& ct);

  /// The same operations on one side of an equation.
  std::vector<CEquation> eq_steps(const CEquation& e, Side side);
  std::vector<CEquation> eq_parallel_steps(const CEquation& e, Side side);
  std::vector<CEquation> eq_multisteps(const CEquation& e, Side side);
  /// Everything reachable with at most `max` ⇝ steps on `side` (breadth-first).
  std::vector<CEquation> eq_reach(const CEquation& e, Side side, unsigned max);

  /// sσ = tσ for every σ ⊨ φ.
  Tri is_trivial(const CEquation& e);
  /// No instance of the term allowed by the constraint can be rewritten.
  Tri is_normal_form(const CTerm& ct);
  Tri is_normal_form(const CEquation& e);

 private:
  using Developed = std::pair<Term, std::vector<Term>>;  // result term, added conjuncts
  std::vector<Developed> multisteps_rec(const Term& t, const Term& phi, const VarSet& phi_vars, unsigned depth);
  struct Redex {
    Position pos;
    const Rule* rule = nullptr;  // null: calculation
    Rule instance;               // rule with its unbound variables renamed
    Subst sigma;                 // matcher of instance.lhs
    Term replacement;
    std::vector<Term> added;  // constraint conjuncts the step adds
  };
  std::vector<Redex> redexes(const CTerm& ct);
  std::optional<Redex> redex_at(const Term& t, const Term& phi, const VarSet& phi_vars, const Rule* rho);
  Tri valid_exists(const Term& phi, const Term& psi, const VarSet& ys);
  Tri nf_term(const Term& t, const Term& phi, const VarSet& phi_vars);

  std::vector<Rule> rules_;
  SmtSession& smt_;
  RewriteLimits limits_;
  bool incomplete_ = false;
};

struct PlainStep {
  Term result;
  Position pos;
  const Rule* rule = nullptr;  // null: calculation
};

/// One-step successors of a ground term (for testing and ground replay).
/// Guards are evaluated with the interpreter; variables that the lhs does not
/// bind range over `extra_domain` (per sort; booleans range over both values
/// and small bit vectors over all patterns).
std::vector<PlainStep> plain_step(const std::vector<Rule>& rules, const Term& s,
                                  const std::vector<Value>& extra_domain = {});
/// The distinct results of plain_step.
std::vector<Term> plain_successors(const std::vector<Rule>& rules, const Term& s,
                                   const std::vector<Value>& extra_domain = {});

}  // namespace lctrs
