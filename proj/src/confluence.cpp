#include "lctrs/confluence.hpp"

#include <chrono>
#include <deque>
#include <unordered_set>

namespace lctrs {

namespace {

using Clock = std::chrono::steady_clock;

enum class Move { Step, Parallel, Multi };
enum class Count { Star, Opt, One };

struct Phase {
  Side side;
  Move move;
  Count count;
};

/// Breadth-first search for a closing (or diverging) sequence from an
/// equation, made of consecutive phases. Every phase is reflexive, so a
/// goal node can be reported as soon as it is created.
class Search {
 public:
  struct Node {
    CEquation eq;
    int parent = -1;
    std::string how;
    std::vector<Position> q;  // positions of the most recent ⇻ step on the right
  };
  using Goal = std::function<bool(const Node&)>;

  Search(Rewriter& rw, std::size_t cap) : rw_(rw), cap_(cap) {}

  int run(const CEquation& start, const std::vector<Phase>& phases, const Goal& goal) {
    nodes_.clear();
    nodes_.push_back({start, -1, "", {}});
    if (goal(nodes_[0])) return 0;
    std::vector<int> frontier{0};
    for (const Phase& ph : phases) {
      std::vector<int> next;
      std::unordered_set<std::string> seen;
      for (int i : frontier) {
        if (seen.insert(nodes_[i].eq.key()).second) next.push_back(i);
      }
      std::size_t begin = 0;
      unsigned rounds = ph.count == Count::Star ? rw_.limits().max_steps : 1;
      for (unsigned round = 0; round < rounds; ++round) {
        std::size_t end = next.size();
        for (std::size_t k = begin; k < end; ++k) {
          int found = expand(next[k], ph, next, seen, goal);
          if (found >= 0) return found;
          if (nodes_.size() >= cap_) break;
        }
        if (end == next.size()) break;
        begin = end;
      }
      frontier = std::move(next);
    }
    return -1;
  }

  /// The sequence from the start to node i, one equation per line.
  std::vector<std::string> path(int i, const std::string& indent) const {
    std::vector<int> chain;
    for (int k = i; k >= 0; k = nodes_[k].parent) chain.push_back(k);
    std::vector<std::string> out;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const Node& n = nodes_[*it];
      out.push_back(indent + (n.parent < 0 ? "" : "-> ") + n.eq.to_string() + (n.how.empty() ? "" : "   (" + n.how + ")"));
    }
    return out;
  }

  const Node& node(int i) const { return nodes_[i]; }
  bool capped() const { return nodes_.size() >= cap_; }

 private:
  int add(int parent, CEquation eq, std::string how, std::vector<Position> q, std::vector<int>& next,
          std::unordered_set<std::string>& seen, const Goal& goal) {
    if (nodes_.size() >= cap_ || !seen.insert(eq.key()).second) return -1;
    nodes_.push_back({std::move(eq), parent, std::move(how), std::move(q)});
    int id = static_cast<int>(nodes_.size()) - 1;
    next.push_back(id);
    return goal(nodes_[id]) ? id : -1;
  }

  int expand(int i, const Phase& ph, std::vector<int>& next, std::unordered_set<std::string>& seen,
             const Goal& goal) {
    const CEquation e = nodes_[i].eq;
    const std::vector<Position> q = nodes_[i].q;
    const char* side = ph.side == Side::Left ? "left" : "right";
    CTerm ct{ph.side == Side::Left ? e.left : e.right, e.constraint};
    auto with = [&](const CTerm& c) {
      return ph.side == Side::Left ? CEquation{c.term, e.right, c.constraint} : CEquation{e.left, c.term, c.constraint};
    };
    switch (ph.move) {
      case Move::Step:
        for (auto& [c, info] : rw_.steps(ct)) {
          std::string how = std::string(side) + ", " + info.rules[0] + " at " + to_string(info.positions[0]);
          int f = add(i, with(c), how, q, next, seen, goal);
          if (f >= 0) return f;
        }
        break;
      case Move::Parallel:
        for (auto& [c, ps] : rw_.parallel_steps_at(ct)) {
          if (ps.empty()) continue;
          std::string how = std::string(side) + ", parallel at";
          for (const Position& p : ps) how += " " + to_string(p);
          int f = add(i, with(c), how, ph.side == Side::Right ? ps : q, next, seen, goal);
          if (f >= 0) return f;
        }
        break;
      case Move::Multi:
        for (const CTerm& c : rw_.multisteps(ct)) {
          if (c == ct) continue;
          int f = add(i, with(c), std::string(side) + ", multistep", q, next, seen, goal);
          if (f >= 0) return f;
        }
        break;
    }
    return -1;
  }

  Rewriter& rw_;
  std::size_t cap_;
  std::vector<Node> nodes_;
};

struct Prover {
  const Problem& p;
  Rewriter rw;
  ConfluenceOptions opt;
  Clock::time_point start = Clock::now();

  Prover(const Problem& prob, SmtSession& smt, const ConfluenceOptions& o)
      : p(prob), rw(prob.rules, smt, o.limits), opt(o) {}

  Verdict verdict(const std::string& method) {
    Verdict v;
    v.method = method;
    return v;
  }

  Verdict& finish(Verdict& v) {
    v.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return v;
  }

  bool left_linear(Verdict& v) {
    for (const Rule& r : p.rules) {
      if (!is_left_linear(r)) {
        v.reasons.push_back("rule " + r.name + " is not left-linear");
        return false;
      }
    }
    return true;
  }

  bool right_linear(Verdict& v) {
    for (const Rule& r : p.rules) {
      if (!is_right_linear(r)) {
        v.reasons.push_back("rule " + r.name + " is not right-linear");
        return false;
      }
    }
    return true;
  }

  Search::Goal trivial_goal() {
    return [this](const Search::Node& n) { return rw.is_trivial(n.eq) == Tri::Yes; };
  }

  /// Closes every pair with `close`, splitting pairs that fail. Proof
  /// lines go to v.proof; the first failure is recorded in v.reasons.
  bool close_all(std::vector<CriticalPair> pairs, Verdict& v,
                 const std::function<std::vector<std::string>(const CriticalPair&, bool&)>& close) {
    std::deque<CriticalPair> work(pairs.begin(), pairs.end());
    while (!work.empty()) {
      CriticalPair cp = std::move(work.front());
      work.pop_front();
      std::string indent(2 * cp.depth, ' ');
      v.proof.push_back(indent + "pair " + cp.eq.to_string());
      if (cp.vacuous) {
        v.proof.push_back(indent + "  unsatisfiable constraint");
        continue;
      }
      bool ok = false;
      std::vector<std::string> lines = close(cp, ok);
      if (ok) {
        v.proof.insert(v.proof.end(), lines.begin(), lines.end());
        continue;
      }
      std::optional<Term> psi;
      if (cp.depth < opt.split_depth) psi = choose_split_constraint(cp, rw);
      if (!psi) {
        v.reasons.push_back("could not close " + cp.eq.to_string());
        return false;
      }
      v.proof.push_back(indent + "  split on " + psi->to_string());
      auto [a, b] = split_pair(cp, *psi, rw);
      work.push_front(std::move(b));
      work.push_front(std::move(a));
    }
    return true;
  }

  /// Closes a pair with one closing sequence of the given phases.
  std::function<std::vector<std::string>(const CriticalPair&, bool&)> closer(std::vector<Phase> phases) {
    return [this, phases](const CriticalPair& cp, bool& ok) {
      Search s(rw, rw.limits().max_states);
      int f = s.run(cp.eq, phases, trivial_goal());
      ok = f >= 0;
      return ok ? s.path(f, std::string(2 * cp.depth + 4, ' ')) : std::vector<std::string>{};
    };
  }
};

}  // namespace

Verdict check_orthogonality(const Problem& p, SmtSession& smt, bool weak, const ConfluenceOptions& opt) {
  Prover pr(p, smt, opt);
  Verdict v = pr.verdict(weak ? "weak orthogonality" : "orthogonality");
  if (!pr.left_linear(v)) return pr.finish(v);
  auto pairs = compute_ccps(p.rules, pr.rw);
  for (const CriticalPair& cp : pairs) {
    if (!weak) {
      v.reasons.push_back("critical pair " + cp.eq.to_string());
      return pr.finish(v);
    }
    if (pr.rw.is_trivial(cp.eq) != Tri::Yes) {
      v.reasons.push_back("non-trivial critical pair " + cp.eq.to_string());
      return pr.finish(v);
    }
    v.proof.push_back("trivial pair " + cp.eq.to_string());
  }
  v.answer = Answer::Yes;
  v.proof.insert(v.proof.begin(), "left-linear with " + std::to_string(pairs.size()) + " critical pairs");
  return pr.finish(v);
}

Verdict check_knuth_bendix(const Problem& p, SmtSession& smt, const std::function<bool()>& terminating,
                           const ConfluenceOptions& opt) {
  Prover pr(p, smt, opt);
  Verdict v = pr.verdict("joinable critical pairs");
  auto pairs = compute_ccps(p.rules, pr.rw);
  bool joined = pr.close_all(pairs, v, pr.closer({{Side::Left, Move::Step, Count::Star}, {Side::Right, Move::Step, Count::Star}}));
  if (!joined) {
    Verdict nc = check_non_confluence(p, smt, opt);
    if (nc.answer == Answer::No) {
      nc.method = v.method;
      return pr.finish(nc);
    }
    return pr.finish(v);
  }
  if (!terminating()) {
    v.reasons.push_back("termination could not be shown");
    return pr.finish(v);
  }
  v.proof.insert(v.proof.begin(), "terminating; all critical pairs are joinable");
  v.answer = Answer::Yes;
  return pr.finish(v);
}

Verdict check_strong_closedness(const Problem& p, SmtSession& smt, const ConfluenceOptions& opt) {
  Prover pr(p, smt, opt);
  Verdict v = pr.verdict("strong closedness");
  if (!pr.left_linear(v) || !pr.right_linear(v)) return pr.finish(v);
  auto pairs = compute_ccps(p.rules, pr.rw);
  auto first = pr.closer({{Side::Left, Move::Step, Count::Star}, {Side::Right, Move::Step, Count::Opt}});
  auto second = pr.closer({{Side::Right, Move::Step, Count::Star}, {Side::Left, Move::Step, Count::Opt}});
  bool ok = pr.close_all(pairs, v, [&](const CriticalPair& cp, bool& closed) {
    auto a = first(cp, closed);
    if (!closed) return a;
    auto b = second(cp, closed);
    a.insert(a.end(), b.begin(), b.end());
    return a;
  });
  if (ok) v.answer = Answer::Yes;
  return pr.finish(v);
}

Verdict check_parallel_closedness(const Problem& p, SmtSession& smt, bool almost, const ConfluenceOptions& opt) {
  Prover pr(p, smt, opt);
  Verdict v = pr.verdict(almost ? "almost parallel closedness" : "parallel closedness");
  if (!pr.left_linear(v)) return pr.finish(v);
  auto pairs = compute_ccps(p.rules, pr.rw);
  auto inner = pr.closer({{Side::Left, Move::Parallel, Count::One}});
  auto overlay = pr.closer({{Side::Left, Move::Parallel, Count::One}, {Side::Right, Move::Step, Count::Star}});
  bool ok = pr.close_all(pairs, v, [&](const CriticalPair& cp, bool& closed) {
    return almost && cp.overlay ? overlay(cp, closed) : inner(cp, closed);
  });
  if (ok) v.answer = Answer::Yes;
  return pr.finish(v);
}

Verdict check_development_closedness(const Problem& p, SmtSession& smt, bool almost,
                                     const ConfluenceOptions& opt) {
  Prover pr(p, smt, opt);
  Verdict v = pr.verdict(almost ? "almost development closedness" : "development closedness");
  if (!pr.left_linear(v)) return pr.finish(v);
  auto pairs = compute_ccps(p.rules, pr.rw);
  auto inner = pr.closer({{Side::Left, Move::Multi, Count::One}});
  auto overlay = pr.closer({{Side::Left, Move::Multi, Count::One}, {Side::Right, Move::Step, Count::Star}});
  bool ok = pr.close_all(pairs, v, [&](const CriticalPair& cp, bool& closed) {
    return almost && cp.overlay ? overlay(cp, closed) : inner(cp, closed);
  });
  if (ok) v.answer = Answer::Yes;
  return pr.finish(v);
}

namespace {

/// ⋃_{p ∈ P} Var(s|_p) \ Var(φ)
VarSet tvar(const Term& s, const Term& phi, const std::vector<Position>& ps) {
  VarSet pv = vars(phi);
  VarSet out;
  for (const Position& p : ps) {
    for (const Var& x : vars(subterm_at(s, p))) {
      if (!pv.count(x)) out.insert(x);
    }
  }
  return out;
}

}  // namespace

Verdict check_pcp_closedness(const Problem& p, SmtSession& smt, const ConfluenceOptions& opt) {
  Prover pr(p, smt, opt);
  Verdict v = pr.verdict("parallel closedness of parallel critical pairs");
  if (!pr.left_linear(v)) return pr.finish(v);
  v.proof.push_back("critical pairs are 1-parallel closed:");
  auto ccps = compute_ccps(p.rules, pr.rw);
  auto one = pr.closer({{Side::Left, Move::Parallel, Count::One}, {Side::Right, Move::Step, Count::Star}});
  if (!pr.close_all(ccps, v, one)) return pr.finish(v);

  bool truncated = false;
  auto cpcps = compute_cpcps(p.rules, pr.rw, &truncated, opt.pairs);
  if (truncated) {
    v.reasons.push_back("too many parallel critical pairs");
    return pr.finish(v);
  }
  v.proof.push_back("parallel critical pairs are 2-parallel closed:");
  auto two = [&](const CriticalPair& cp, bool& closed) {
    VarSet bound = tvar(cp.peak, cp.eq.constraint, cp.positions);
    Search s(pr.rw, pr.rw.limits().max_states);
    Search::Goal goal = [&](const Search::Node& n) {
      for (const Var& x : tvar(n.eq.right, n.eq.constraint, n.q)) {
        if (!bound.count(x)) return false;
      }
      return pr.rw.is_trivial(n.eq) == Tri::Yes;
    };
    int f = s.run(cp.eq, {{Side::Right, Move::Parallel, Count::One}, {Side::Left, Move::Step, Count::Star}}, goal);
    closed = f >= 0;
    return closed ? s.path(f, std::string(2 * cp.depth + 4, ' ')) : std::vector<std::string>{};
  };
  if (!pr.close_all(cpcps, v, two)) return pr.finish(v);
  v.answer = Answer::Yes;
  return pr.finish(v);
}

Verdict check_non_confluence(const Problem& p, SmtSession& smt, const ConfluenceOptions& opt) {
  Prover pr(p, smt, opt);
  Verdict v = pr.verdict("non-confluence");
  auto pairs = compute_ccps(p.rules, pr.rw);
  // breadth first over all splits of all pairs
  struct Item {
    CriticalPair cp;
    std::vector<std::string> history;
  };
  std::deque<Item> work;
  for (CriticalPair& cp : pairs) work.push_back({cp, {"pair " + cp.eq.to_string()}});
  std::size_t budget = 256;
  while (!work.empty() && budget-- > 0) {
    Item it = std::move(work.front());
    work.pop_front();
    if (it.cp.vacuous) continue;
    Search s(pr.rw, std::min<std::size_t>(pr.rw.limits().max_states, 400));
    Search::Goal goal = [&](const Search::Node& n) {
      return pr.rw.is_trivial(n.eq) == Tri::No && pr.rw.is_normal_form(n.eq) == Tri::Yes;
    };
    int f = s.run(it.cp.eq, {{Side::Left, Move::Step, Count::Star}, {Side::Right, Move::Step, Count::Star}}, goal);
    if (f >= 0) {
      const CEquation& end = s.node(f).eq;
      v.proof = it.history;
      auto lines = s.path(f, "  ");
      v.proof.insert(v.proof.end(), lines.begin(), lines.end());
      v.proof.push_back("non-trivial normal form " + end.to_string());
      // the instance has to separate the two sides, not just satisfy φ
      Term query = end.constraint;
      if (end.left.is_logical() && end.right.is_logical()) query = mk_and(query, mk_not(mk_eq(end.left, end.right)));
      for (int attempt = 0; attempt < 16 && !v.counterexample; ++attempt) {
        SatAnswer m = smt.check_sat(query);
        if (m.result != SatResult::Sat) break;
        Subst g;
        std::vector<Term> same;
        for (const auto& [x, val] : m.model) {
          g.bind(x, Term::value(val));
          same.push_back(mk_eq(Term::var(x), Term::value(val)));
        }
        Counterexample c{g.apply(it.cp.peak), g.apply(end.left), g.apply(end.right)};
        if (c.left != c.right) {
          v.counterexample = c;
        } else if (same.empty()) {
          break;
        } else {
          query = mk_and(query, mk_not(mk_and(same)));
        }
      }
      if (v.counterexample) {
        v.proof.push_back("instance: " + v.counterexample->left.to_string() + " <-* " +
                          v.counterexample->source.to_string() + " ->* " + v.counterexample->right.to_string());
      }
      v.answer = Answer::No;
      return pr.finish(v);
    }
    if (it.cp.depth >= opt.split_depth) continue;
    for (const Term& psi : split_candidates(it.cp, pr.rw)) {
      auto [a, b] = split_pair(it.cp, psi, pr.rw);
      for (CriticalPair* h : {&a, &b}) {
        Item child{*h, it.history};
        child.history.push_back(std::string(2 * h->depth, ' ') + "split on " +
                                (h == &a ? psi : mk_not(psi)).to_string() + ": " + h->eq.to_string());
        work.push_back(std::move(child));
      }
    }
  }
  v.reasons.push_back("no critical pair rewrites to a non-trivial normal form");
  return pr.finish(v);
}

}  // namespace lctrs
