#pragma once

#include "lctrs/problem.hpp"
#include "lctrs/rewriting.hpp"
#include "lctrs/smt.hpp"

#include <string>
#include <vector>

namespace lctrs::testing {

/// Up to k distinct models of phi, each blocked before asking for the next.
std::vector<Model> sample_models(SmtSession& smt, const Term& phi, std::size_t k);

/// Applies a model as a substitution; variables outside the model stay.
Subst as_subst(const Model& m);

/// Renames fresh variables (names containing an apostrophe) by order of
/// occurrence, so results of independent runs can be compared.
std::string canonical(const CTerm& ct);
std::string canonical(const CEquation& e);

/// Ground terms over the term symbols of p and the given values, up to the
/// given nesting depth, at most `cap` per sort and depth (breadth first).
std::vector<Term> ground_terms(const Problem& p, const std::vector<Value>& values, unsigned depth,
                               std::size_t cap = 400);

/// Integer values lo..hi.
std::vector<Value> int_range(long lo, long hi);

/// Live (non-zombie) children of this process according to /proc,
/// independent of the solver session bookkeeping.
std::size_t child_processes();

}  // namespace lctrs::testing
