#pragma once

#include "lctrs/term.hpp"

#include <sys/types.h>

#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace lctrs {

enum class SatResult { Sat, Unsat, Unknown };
enum class Validity { Valid, Invalid, Unknown };

using Model = std::map<Var, Value>;

struct SatAnswer {
  SatResult result = SatResult::Unknown;
  Model model;  // every free variable, when Sat
};

struct ValidAnswer {
  Validity result = Validity::Unknown;
  Model counter_model;  // when Invalid
};

/// Solver command line: $LCTRS_SOLVER if set, otherwise the build default.
std::string default_solver_command();

/// SMT-LIB spelling of a sort, a variable (always |quoted|) and a logical term.
std::string smt_sort(const Sort& s);
std::string smt_symbol(const Var& x);
std::string smt_term(const Term& t);
/// Parses a model value as printed by a solver.
std::optional<Value> parse_smt_value(const std::string& text, const Sort& sort);

/// One solver process, reused across queries. Every query runs between
/// `(push 1)` and `(pop 1)`. Not thread-safe except for `cancel`.
class SmtSession {
 public:
  explicit SmtSession(std::string command = default_solver_command(), int query_timeout_ms = 5000);
  ~SmtSession();
  SmtSession(const SmtSession&) = delete;
  SmtSession& operator=(const SmtSession&) = delete;

  SatAnswer check_sat(const Term& phi);
  /// Valid iff ¬φ is unsatisfiable.
  ValidAnswer check_valid(const Term& phi);
  /// Values for `targets` under which φ is satisfiable; nullopt if φ is
  /// unsatisfiable or the solver gives up.
  std::optional<Subst> find_values(const Term& phi, const VarSet& targets);

  /// A raw query: the constants in `decls` are declared, the assertions
  /// (SMT-LIB text) asserted, and on Sat the given terms are evaluated.
  struct RawAnswer {
    SatResult result = SatResult::Unknown;
    std::map<std::string, std::string> values;
  };
  RawAnswer check_raw(const std::vector<std::pair<std::string, std::string>>& decls,
                      const std::vector<std::string>& assertions, const std::vector<std::string>& eval = {});

  /// Kills the solver; every later query throws SolverCrashed. Safe to call
  /// from another thread.
  void cancel();
  bool cancelled() const { return cancelled_; }

  std::size_t spawn_count() const { return spawns_; }
  std::size_t query_count() const { return queries_; }
  pid_t pid() const;
  /// Solvers started by any session in this process.
  static std::size_t total_spawns();
  /// Solver processes currently running.
  static std::size_t live_processes();

 private:
  void ensure_started();
  void stop();
  void send(const std::string& text);
  std::string read_line(long deadline_ms);
  std::string read_sexp(long deadline_ms);
  RawAnswer run(const std::string& body, const std::vector<std::string>& eval);

  std::string command_;
  int timeout_ms_;
  mutable std::mutex mu_;
  pid_t pid_ = -1;
  int to_solver_ = -1;
  int from_solver_ = -1;
  std::string buffer_;
  std::atomic<bool> cancelled_{false};
  std::size_t spawns_ = 0;
  std::size_t queries_ = 0;
  std::unordered_map<std::string, RawAnswer> cache_;
};

}  // namespace lctrs
