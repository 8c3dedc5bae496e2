#pragma once

#include "lctrs/problem.hpp"
#include "lctrs/smt.hpp"
#include "lctrs/verdict.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lctrs {

/// Dependency pairs (over marked symbols f#) together with the rules.
struct DPProblem {
  std::vector<Rule> pairs;
  std::vector<Rule> rules;
  bool graph_processed = false;
};

/// Sort of every marked symbol. No user sort can have this name.
Sort marked_sort();
/// f# with the argument sorts of f.
SymbolPtr marked(const SymbolPtr& f);
bool is_marked(const FunSym& f);

/// Replaces logical subterms of the rhs that are not values and whose
/// variables all occur in the guard by fresh variables y, adding y = t to the
/// guard.
Rule flatten_calculations(const Rule& r);

/// ℓ# → (r|q)# [φ] for every subterm r|q with a defined root symbol, taken
/// from the flattened rules.
DPProblem compute_dps(const Problem& p);

/// The estimated dependency graph. Nodes are the pairs, an edge i → j means
/// that pair j may follow pair i in a chain.
struct DPGraph {
  std::vector<Rule> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  /// (dp-graph (node 0 l r φ) ... (edge 0 1) ...)
  std::string to_sexp() const;
};
DPGraph dp_graph(const DPProblem& dp, SmtSession& smt);
/// One problem per strongly connected component with at least one edge, in
/// topological order.
std::vector<DPProblem> dependency_graph(const DPProblem& dp, SmtSession& smt);

/// A precedence on term symbols, highest first.
struct Precedence {
  std::vector<SymbolPtr> order;
  std::string to_string() const;  // "f > g > h"
};
/// A precedence under which every rule decreases strictly in the
/// constrained recursive path order.
std::optional<Precedence> rpo_prove(const std::vector<Rule>& rules, SmtSession& smt);

/// Per marked symbol (keyed "name/arity") either an argument index
/// (0-based) or a vector of coefficients, one per argument.
struct Projection {
  std::map<std::string, unsigned> index;
  std::map<std::string, std::vector<int>> coefficients;
  std::string to_string() const;
};

/// A successful processor step: the pairs it oriented strictly are gone
/// from `remaining`.
struct ProcessorResult {
  std::string method;
  std::vector<std::string> proof;
  std::vector<Rule> removed;
  DPProblem remaining;
  std::optional<Projection> projection;
  std::optional<Precedence> precedence;
};

/// RPO as a reduction pair: rules weakly, pairs weakly, at least one
/// pair strictly.
std::optional<ProcessorResult> rpo_processor(const DPProblem& dp, SmtSession& smt);
/// Ignores constraints; projected arguments must be (strict) subterms.
std::optional<ProcessorResult> subterm_criterion(const DPProblem& dp, SmtSession& smt);
/// Projection to one integer argument with φ ⇒ ℓ_i ≻ r_j or φ ⇒ ℓ_i ≥ r_j.
std::optional<ProcessorResult> value_criterion(const DPProblem& dp, SmtSession& smt);
/// As value_criterion, projecting to linear combinations of the integer
/// arguments with coefficients in [-bound, bound].
std::optional<ProcessorResult> special_value_criterion(const DPProblem& dp, SmtSession& smt, int bound = 2);

struct TerminationOptions {
  bool direct_rpo = true;
  /// Base methods of the reduction pair processor, tried in order:
  /// "rpo", "vc", "subterm", "svc".
  std::vector<std::string> methods = {"rpo", "vc", "subterm", "svc"};
  int coefficient_bound = 2;
  unsigned max_rounds = 64;
};

/// Applies the first base method that succeeds and splits the rest into
/// strongly connected components again. nullopt if no method applies.
std::optional<std::vector<DPProblem>> reduction_pairs(const DPProblem& dp, SmtSession& smt,
                                                      const TerminationOptions& opt, std::vector<std::string>* proof);

/// Yes or Maybe; termination is never disproved.
Verdict prove_termination(const Problem& p, SmtSession& smt, const TerminationOptions& opt = {});

}  // namespace lctrs
