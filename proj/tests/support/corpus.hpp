#pragma once

#include "lctrs/problem.hpp"
#include "lctrs/rewriting.hpp"
#include "lctrs/verdict.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lctrs::testing {

/// ARI texts of small random integer systems: f : Int -> Int,
/// g : Int Int -> Int, a : Int, one to three rules, values -2..2 and terms of
/// depth at most 3. Every variable of a rule occurs in its lhs, so ground
/// rewriting never has to guess values. Deterministic in the seed.
std::vector<std::string> random_corpus(std::size_t n, unsigned seed);

/// Ground terms over the term symbols of p and the given values with at most
/// `max_size` symbols.
std::vector<Term> ground_terms_by_size(const Problem& p, const std::vector<Value>& values, std::size_t max_size);

struct Peak {
  Term source, left, right;
};

struct JoinReport {
  /// A peak whose ends provably have no common reduct.
  std::optional<Peak> counterexample;
  /// Start terms whose reducts were not exhausted within the depth.
  std::size_t open = 0;
};

/// Looks for a ground non-joinable peak from each start term. A start term
/// whose reducts are all found within `depth` steps (and have at most 40
/// symbols) is checked exactly
/// (every two reducts need a common reduct); otherwise only two distinct
/// reachable normal forms count.
JoinReport brute_force_joinability(const std::vector<Rule>& rules, const std::vector<Term>& starts, unsigned depth,
                                   std::size_t max_reducts = 300);

/// Both ends are reachable from the source, distinct and irreducible.
bool confirms_non_confluence(const std::vector<Rule>& rules, const Counterexample& c, unsigned depth = 12);

struct HaltReport {
  std::optional<Term> diverging;  // a start term with a cycle or a path longer than the bound
  std::size_t open = 0;           // start terms abandoned at the node cap
};

/// Every rewrite sequence from every start term ends within `bound` steps.
HaltReport brute_force_halting(const std::vector<Rule>& rules, const std::vector<Term>& starts, unsigned bound,
                               std::size_t max_nodes = 4000);

/// Everything the random-corpus oracles found on one system.
struct SystemCheck {
  std::map<std::string, Answer> answers;  // per confluence method
  Answer termination = Answer::Maybe;
  std::vector<std::string> failures;      // contradictions between a verdict and an oracle
  bool non_joinable_peak = false;         // the brute force found one
  std::size_t join_open = 0;
  std::size_t halt_open = 0;
  std::size_t steps_sampled = 0;
  std::size_t step_failures = 0;
  bool merged = false;                    // preprocessing merged some rules
  std::size_t merge_differences = 0;      // ground terms whose one-step reducts changed
};

/// Runs every confluence method and the termination prover on the system
/// and cross-checks them against the brute-force oracles; also samples up
/// to `step_samples` constrained steps and replays them on ground instances.
SystemCheck check_system(const std::string& text, unsigned seed, std::size_t step_samples);

}  // namespace lctrs::testing
