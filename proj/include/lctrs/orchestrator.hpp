#pragma once

#include "lctrs/confluence.hpp"
#include "lctrs/termination.hpp"

#include <atomic>
#include <optional>
#include <string>
#include <vector>

namespace lctrs {

struct MethodSpec {
  std::string name;
  std::optional<unsigned> steps;   // closing sequence length
  std::optional<unsigned> splits;  // split depth
};

struct Strategy {
  std::vector<MethodSpec> methods;
};

/// Confluence method names, in the default order.
const std::vector<std::string>& confluence_methods();
/// Base methods of the termination prover, in the default order.
const std::vector<std::string>& termination_methods();

/// `name; name(steps=4, splits=2); ...`. Empty text selects every method.
/// Throws StrategyParseError naming the valid methods.
Strategy parse_strategy(const std::string& text, const std::vector<std::string>& valid = confluence_methods());

/// One method on its own, in the calling thread.
Verdict run_confluence_method(const MethodSpec& m, const Problem& p, SmtSession& smt, ConfluenceOptions opt = {});

struct Budget {
  double timeout_seconds = 60;
  unsigned threads = 8;
  std::string solver = default_solver_command();
  /// Polled while waiting; setting it cancels the run.
  const std::atomic<bool>* interrupt = nullptr;
  /// One line per method start and finish goes here when set.
  std::function<void(const std::string&)> log;
};

/// Runs the strategy's methods, plus "nc" when missing, concurrently, each
/// with its own solver; the first YES or NO wins and the others are cancelled.
Verdict prove_confluence(const Problem& p, const Strategy& s, const Budget& budget,
                         const ConfluenceOptions& opt = {});

/// prove_termination under the budget's timeout.
Verdict run_termination(const Problem& p, const TerminationOptions& opt, const Budget& budget);

}  // namespace lctrs
