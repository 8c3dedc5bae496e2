#pragma once

#include "lctrs/critical_pairs.hpp"
#include "lctrs/problem.hpp"
#include "lctrs/rewriting.hpp"
#include "lctrs/verdict.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lctrs {

struct ConfluenceOptions {
  RewriteLimits limits;
  unsigned split_depth = 3;  // nested splits per critical pair
  CriticalPairLimits pairs;
};

/// The criteria below expect a preprocessed problem. Each one runs its SMT
/// queries on the given session.

/// (Weak) orthogonality: left-linear and no critical pairs (all trivial).
Verdict check_orthogonality(const Problem& p, SmtSession& smt, bool weak, const ConfluenceOptions& opt = {});
/// Joinable critical pairs for a terminating system; `terminating` is asked
/// only when needed.
Verdict check_knuth_bendix(const Problem& p, SmtSession& smt, const std::function<bool()>& terminating,
                           const ConfluenceOptions& opt = {});
/// Strong closedness (linear systems).
Verdict check_strong_closedness(const Problem& p, SmtSession& smt, const ConfluenceOptions& opt = {});
/// (Almost) parallel closedness (left-linear systems).
Verdict check_parallel_closedness(const Problem& p, SmtSession& smt, bool almost, const ConfluenceOptions& opt = {});
/// (Almost) development closedness (left-linear systems).
Verdict check_development_closedness(const Problem& p, SmtSession& smt, bool almost,
                                     const ConfluenceOptions& opt = {});
/// 1-parallel closed critical pairs and 2-parallel closed parallel critical
/// pairs (left-linear systems).
Verdict check_pcp_closedness(const Problem& p, SmtSession& smt, const ConfluenceOptions& opt = {});
/// A critical pair, possibly split, that rewrites to a non-trivial equation
/// in normal form.
Verdict check_non_confluence(const Problem& p, SmtSession& smt, const ConfluenceOptions& opt = {});

}  // namespace lctrs
