#include "lctrs/orchestrator.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <mutex>
#include <regex>
#include <thread>

namespace lctrs {

const std::vector<std::string>& confluence_methods() {
  static const std::vector<std::string> names = {"o", "wo", "kb", "sc", "pc", "apc", "dc", "adc", "pcp", "nc"};
  return names;
}

const std::vector<std::string>& termination_methods() {
  static const std::vector<std::string> names = {"rpo", "vc", "subterm", "svc"};
  return names;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void strategy_error(const std::string& what, const std::vector<std::string>& valid) {
  std::string names;
  for (const std::string& n : valid) names += (names.empty() ? "" : ", ") + n;
  throw Error(ErrorKind::StrategyParseError, what + "; valid methods: " + names);
}

}  // namespace

Strategy parse_strategy(const std::string& text, const std::vector<std::string>& valid) {
  Strategy s;
  static const std::regex item(R"(^([A-Za-z]+)\s*(?:\((.*)\))?$)");
  static const std::regex arg(R"(^\s*([A-Za-z]+)\s*=\s*([0-9]+)\s*$)");
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    std::string part = trim(text.substr(start, end - start));
    start = end + 1;
    if (part.empty()) continue;
    std::smatch m;
    if (!std::regex_match(part, m, item)) strategy_error("cannot parse '" + part + "'", valid);
    MethodSpec spec{m[1].str(), std::nullopt, std::nullopt};
    if (std::find(valid.begin(), valid.end(), spec.name) == valid.end()) {
      strategy_error("unknown method '" + spec.name + "'", valid);
    }
    std::string args = m[2].str();
    std::size_t a = 0;
    while (m[2].matched && a <= args.size()) {
      std::size_t comma = args.find(',', a);
      if (comma == std::string::npos) comma = args.size();
      std::string kv = args.substr(a, comma - a);
      a = comma + 1;
      std::smatch km;
      if (!std::regex_match(kv, km, arg)) strategy_error("cannot parse argument '" + trim(kv) + "'", valid);
      unsigned n = static_cast<unsigned>(std::stoul(km[2].str()));
      if (km[1] == "steps") spec.steps = n;
      else if (km[1] == "splits") spec.splits = n;
      else strategy_error("unknown argument '" + km[1].str() + "' (use steps or splits)", valid);
    }
    s.methods.push_back(std::move(spec));
  }
  if (s.methods.empty()) {
    for (const std::string& n : valid) s.methods.push_back({n, std::nullopt, std::nullopt});
  }
  return s;
}

Verdict run_confluence_method(const MethodSpec& m, const Problem& p, SmtSession& smt, ConfluenceOptions opt) {
  if (m.steps) opt.limits.max_steps = *m.steps;
  if (m.splits) opt.split_depth = *m.splits;
  const std::string& n = m.name;
  if (n == "o") return check_orthogonality(p, smt, false, opt);
  if (n == "wo") return check_orthogonality(p, smt, true, opt);
  if (n == "kb") {
    return check_knuth_bendix(
        p, smt, [&] { return prove_termination(p, smt).answer == Answer::Yes; }, opt);
  }
  if (n == "sc") return check_strong_closedness(p, smt, opt);
  if (n == "pc") return check_parallel_closedness(p, smt, false, opt);
  if (n == "apc") return check_parallel_closedness(p, smt, true, opt);
  if (n == "dc") return check_development_closedness(p, smt, false, opt);
  if (n == "adc") return check_development_closedness(p, smt, true, opt);
  if (n == "pcp") return check_pcp_closedness(p, smt, opt);
  if (n == "nc") return check_non_confluence(p, smt, opt);
  throw Error(ErrorKind::StrategyParseError, "unknown method " + n);
}

namespace {

using Clock = std::chrono::steady_clock;

/// Shared state of one concurrent run.
struct Race {
  std::mutex mu;
  std::condition_variable cv;
  std::vector<SmtSession*> live;
  std::optional<Verdict> winner;
  std::vector<std::string> reasons;
  bool stop = false;
  std::size_t finished = 0;

  void cancel_all() {
    stop = true;
    for (SmtSession* s : live) s->cancel();
  }
};

/// Waits until `done()` holds, the deadline passes or the run is
/// interrupted; returns a reason in the latter cases.
std::optional<std::string> wait(Race& race, const Budget& budget, Clock::time_point deadline,
                                const std::function<bool()>& done) {
  std::unique_lock<std::mutex> lock(race.mu);
  for (;;) {
    if (done()) return std::nullopt;
    if (budget.interrupt && budget.interrupt->load()) {
      race.cancel_all();
      return "interrupted";
    }
    if (Clock::now() >= deadline) {
      race.cancel_all();
      return "timeout after " + std::to_string(budget.timeout_seconds) + " s";
    }
    race.cv.wait_for(lock, std::chrono::milliseconds(20));
  }
}

int query_timeout_ms(const Budget& b) {
  return static_cast<int>(std::min(5000.0, std::max(100.0, b.timeout_seconds * 1000)));
}

}  // namespace

Verdict prove_confluence(const Problem& p, const Strategy& selected, const Budget& budget,
                         const ConfluenceOptions& opt) {
  auto start = Clock::now();
  Strategy s = selected;
  auto has_nc = [](const MethodSpec& m) { return m.name == "nc"; };
  if (std::none_of(s.methods.begin(), s.methods.end(), has_nc)) s.methods.push_back({"nc", std::nullopt, std::nullopt});
  auto deadline = start + std::chrono::milliseconds(static_cast<long>(budget.timeout_seconds * 1000));
  Race race;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(race.mu);
        if (race.stop || next >= s.methods.size()) return;
        i = next++;
      }
      const MethodSpec& m = s.methods[i];
      SmtSession smt(budget.solver, query_timeout_ms(budget));
      {
        std::lock_guard<std::mutex> lock(race.mu);
        if (race.stop) return;
        race.live.push_back(&smt);
      }
      if (budget.log) budget.log("start " + m.name);
      Verdict v;
      try {
        v = run_confluence_method(m, p, smt, opt);
      } catch (const std::exception& e) {
        v.answer = Answer::Maybe;
        v.method = m.name;
        v.reasons = {e.what()};
      }
      if (budget.log) budget.log("finish " + m.name + ": " + to_string(v.answer));
      std::lock_guard<std::mutex> lock(race.mu);
      race.live.erase(std::find(race.live.begin(), race.live.end(), &smt));
      if (v.answer != Answer::Maybe && !race.winner && !smt.cancelled()) {
        race.winner = v;
        race.cancel_all();
      } else if (v.answer == Answer::Maybe) {
        for (const std::string& r : v.reasons) race.reasons.push_back(m.name + ": " + r);
      }
      ++race.finished;
      race.cv.notify_all();
    }
  };
  std::vector<std::thread> pool;
  std::size_t n = std::max<std::size_t>(1, std::min<std::size_t>(budget.threads, s.methods.size()));
  for (std::size_t k = 0; k < n; ++k) pool.emplace_back(worker);
  auto stopped = wait(race, budget, deadline,
                      [&] { return race.winner.has_value() || race.finished == s.methods.size(); });
  for (std::thread& t : pool) t.join();

  Verdict out;
  if (race.winner) {
    out = *race.winner;
  } else {
    out.method = "none";
    out.reasons = race.reasons;
    if (stopped) out.reasons.insert(out.reasons.begin(), *stopped);
  }
  out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

Verdict run_termination(const Problem& p, const TerminationOptions& opt, const Budget& budget) {
  auto start = Clock::now();
  auto deadline = start + std::chrono::milliseconds(static_cast<long>(budget.timeout_seconds * 1000));
  Race race;
  std::optional<Verdict> result;
  SmtSession smt(budget.solver, query_timeout_ms(budget));
  race.live.push_back(&smt);
  std::thread t([&] {
    Verdict v;
    try {
      v = prove_termination(p, smt, opt);
    } catch (const std::exception& e) {
      v.method = "dependency pairs";
      v.reasons = {e.what()};
    }
    std::lock_guard<std::mutex> lock(race.mu);
    result = std::move(v);
    race.cv.notify_all();
  });
  auto stopped = wait(race, budget, deadline, [&] { return result.has_value(); });
  t.join();
  Verdict out = *result;
  if (stopped) {
    out.answer = Answer::Maybe;
    out.reasons.insert(out.reasons.begin(), *stopped);
  }
  out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

}  // namespace lctrs
