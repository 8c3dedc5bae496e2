#include "lctrs/critical_pairs.hpp"

#include <algorithm>

namespace lctrs {

namespace {

bool rename_into(const Term& pattern, const Term& subject, Subst& sigma, std::map<Var, Var>& inverse) {
  if (pattern.is_var() != subject.is_var()) return false;
  if (pattern.is_var()) {
    const Var& x = pattern.as_var();
    const Var& y = subject.as_var();
    if (!(x.sort == y.sort)) return false;
    if (const Term* t = sigma.find(x)) return *t == subject;
    auto [it, fresh] = inverse.emplace(y, x);
    if (!fresh && !(it->second == x)) return false;
    sigma.bind(x, subject);
    return true;
  }
  if (!(pattern.symbol() == subject.symbol())) return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i) {
    if (!rename_into(pattern.arg(i), subject.arg(i), sigma, inverse)) return false;
  }
  return true;
}

}  // namespace

std::optional<Subst> merge_renaming(const Rule& r1, const Rule& r2) {
  Subst sigma;
  std::map<Var, Var> inverse;
  if (!rename_into(r2.lhs, r1.lhs, sigma, inverse) || !rename_into(r2.rhs, r1.rhs, sigma, inverse)) {
    return std::nullopt;
  }
  // Guard-only variables of ρ2 are mapped onto the guard-only variables of
  // ρ1 sort by sort; variables shared with ℓ2/r2 are already fixed.
  VarSet g1 = vars(r1.guard);
  std::vector<Var> open1, open2;
  for (const Var& x : g1) {
    if (!inverse.count(x)) open1.push_back(x);
  }
  for (const Var& x : vars(r2.guard)) {
    if (!sigma.contains(x)) open2.push_back(x);
  }
  if (open1.size() != open2.size()) return std::nullopt;
  for (const Var& x : open2) {
    auto it = std::find_if(open1.begin(), open1.end(), [&](const Var& y) { return y.sort == x.sort; });
    if (it == open1.end()) return std::nullopt;
    sigma.bind(x, Term::var(*it));
    open1.erase(it);
  }
  if (vars(sigma.apply(r2.guard)) != g1) return std::nullopt;
  return sigma;
}

std::vector<Rule> merge_rules(const std::vector<Rule>& rules) {
  std::vector<Rule> out = rules;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < out.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < out.size() && !changed; ++j) {
        if (out[i].is_calculation || out[j].is_calculation) continue;
        auto sigma = merge_renaming(out[i], out[j]);
        if (!sigma) continue;
        Rule merged(out[i].lhs, out[i].rhs, mk_or(out[i].guard, sigma->apply(out[j].guard)),
                    out[i].name + "+" + out[j].name);
        out[i] = merged;
        out.erase(out.begin() + static_cast<long>(j));
        changed = true;
      }
    }
  }
  return out;
}

}  // namespace lctrs
