#include "lctrs/smt.hpp"

#include "lctrs/sexp.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/prctl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>

#ifndef LCTRS_DEFAULT_SOLVER
#define LCTRS_DEFAULT_SOLVER "z3 -in"
#endif

namespace lctrs {

namespace {

std::atomic<std::size_t> g_spawns{0};
std::atomic<long> g_live{0};

const char* kSync = "lctrs-sync";

long now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

void write_all(int fd, const std::string& s) {
  std::size_t off = 0;
  while (off < s.size()) {
    ssize_t n = ::write(fd, s.data() + off, s.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorKind::SolverCrashed, "solver input closed");
    }
    off += static_cast<std::size_t>(n);
  }
}

}  // namespace

std::string default_solver_command() {
  if (const char* env = std::getenv("LCTRS_SOLVER"); env && *env) return env;
  return LCTRS_DEFAULT_SOLVER;
}

std::string smt_sort(const Sort& s) { return s.to_string(); }

std::string smt_symbol(const Var& x) {
  std::string n;
  for (char c : x.name) n += (c == '|' || c == '\\') ? '_' : c;
  return "|" + n + "|";
}

std::string smt_term(const Term& t) {
  if (t.is_var()) return smt_symbol(t.as_var());
  if (t.is_value()) return t.symbol().value->to_smtlib();
  if (!t.symbol().is_theory()) {
    throw Error(ErrorKind::UnsupportedFeature, "term symbol " + t.symbol().name + " in an SMT query");
  }
  if (t.args().empty()) return t.symbol().spelling();
  std::string s = "(" + t.symbol().spelling();
  for (const Term& a : t.args()) s += " " + smt_term(a);
  return s + ")";
}

namespace {

std::optional<Rational> parse_number(const Sexp& e) {
  if (e.atom) {
    const std::string& a = e.text;
    auto dot = a.find('.');
    try {
      if (dot == std::string::npos) return Rational(BigInt(a));
      std::string frac = a.substr(dot + 1);
      BigInt scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      return Rational(BigInt(a.substr(0, dot) + frac), scale);
    } catch (...) {
      return std::nullopt;
    }
  }
  if (e.size() == 2 && e[0].is_atom("-")) {
    auto v = parse_number(e[1]);
    if (v) return -*v;
    return std::nullopt;
  }
  if (e.size() == 3 && e[0].is_atom("/")) {
    auto n = parse_number(e[1]);
    auto d = parse_number(e[2]);
    if (n && d && *d != 0) return *n / *d;
  }
  if (e.size() == 2 && e[0].is_atom("to_real")) return parse_number(e[1]);
  return std::nullopt;
}

std::optional<Value> value_of(const Sexp& e, const Sort& sort) {
  if (sort.is_bool()) {
    if (e.is_atom("true")) return Value::boolean(true);
    if (e.is_atom("false")) return Value::boolean(false);
    return std::nullopt;
  }
  if (sort.is_int() || sort.is_real()) {
    auto r = parse_number(e);
    if (!r) return std::nullopt;
    if (sort.is_real()) return Value::real(*r);
    if (boost::multiprecision::denominator(*r) != 1) return std::nullopt;
    return Value::integer(boost::multiprecision::numerator(*r));
  }
  if (sort.is_bitvec()) {
    BigInt v = 0;
    if (e.atom && e.text.rfind("#b", 0) == 0) {
      for (std::size_t i = 2; i < e.text.size(); ++i) v = v * 2 + (e.text[i] - '0');
    } else if (e.atom && e.text.rfind("#x", 0) == 0) {
      for (std::size_t i = 2; i < e.text.size(); ++i) {
        char c = static_cast<char>(std::tolower(e.text[i]));
        v = v * 16 + (c <= '9' ? c - '0' : c - 'a' + 10);
      }
    } else if (e.size() == 3 && e[0].is_atom("_") && e[1].atom && e[1].text.rfind("bv", 0) == 0) {
      v = BigInt(e[1].text.substr(2));
    } else {
      return std::nullopt;
    }
    return Value::bitvec(BitVec(sort.width, v));
  }
  return std::nullopt;
}

}  // namespace

std::optional<Value> parse_smt_value(const std::string& text, const Sort& sort) {
  try {
    auto es = read_sexps(text);
    if (es.size() != 1) return std::nullopt;
    return value_of(es[0], sort);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------

SmtSession::SmtSession(std::string command, int query_timeout_ms)
    : command_(std::move(command)), timeout_ms_(query_timeout_ms) {}

SmtSession::~SmtSession() { stop(); }

pid_t SmtSession::pid() const {
  std::lock_guard<std::mutex> lock(mu_);
  return pid_;
}

std::size_t SmtSession::total_spawns() { return g_spawns; }
std::size_t SmtSession::live_processes() { return static_cast<std::size_t>(g_live.load()); }

void SmtSession::ensure_started() {
  if (cancelled_) throw Error(ErrorKind::SolverCrashed, "solver session cancelled");
  if (pid_ > 0) return;
  std::vector<std::string> words = split_words(command_);
  if (words.empty()) throw Error(ErrorKind::SolverCrashed, "empty solver command");
  int in[2], out[2];
  if (pipe2(in, O_CLOEXEC) != 0 || pipe2(out, O_CLOEXEC) != 0) {
    throw Error(ErrorKind::SolverCrashed, std::string("pipe: ") + std::strerror(errno));
  }
  std::vector<char*> argv;
  for (std::string& w : words) argv.push_back(w.data());
  argv.push_back(nullptr);
  pid_t child = fork();
  if (child < 0) throw Error(ErrorKind::SolverCrashed, std::string("fork: ") + std::strerror(errno));
  if (child == 0) {
    prctl(PR_SET_PDEATHSIG, SIGKILL);  // no orphans if we are killed
    dup2(in[0], 0);
    dup2(out[1], 1);
    int devnull = open("/dev/null", O_WRONLY);
    if (devnull >= 0) dup2(devnull, 2);
    execvp(argv[0], argv.data());
    _exit(127);
  }
  close(in[0]);
  close(out[1]);
  {
    std::lock_guard<std::mutex> lock(mu_);
    pid_ = child;
  }
  to_solver_ = in[1];
  from_solver_ = out[0];
  buffer_.clear();
  ++spawns_;
  ++g_spawns;
  ++g_live;
  signal(SIGPIPE, SIG_IGN);
  std::string init = "(set-option :print-success false)\n(set-option :produce-models true)\n";
  if (command_.find("z3") != std::string::npos) {
    init += "(set-option :timeout " + std::to_string(timeout_ms_) + ")\n";
  } else if (command_.find("cvc5") != std::string::npos) {
    init += "(set-option :tlimit-per " + std::to_string(timeout_ms_) + ")\n";
  }
  // Quantified queries (extra-variable witnesses, termination encodings)
  // share the session with quantifier-free ones.
  init += "(set-logic ALL)\n";
  send(init);
}

void SmtSession::stop() {
  pid_t p;
  {
    std::lock_guard<std::mutex> lock(mu_);
    p = pid_;
    pid_ = -1;
  }
  if (to_solver_ >= 0) close(to_solver_);
  if (from_solver_ >= 0) close(from_solver_);
  to_solver_ = from_solver_ = -1;
  if (p > 0) {
    kill(p, SIGKILL);
    waitpid(p, nullptr, 0);
    --g_live;
  }
}

void SmtSession::cancel() {
  cancelled_ = true;
  std::lock_guard<std::mutex> lock(mu_);
  // The owning thread notices EOF on the pipe and reaps the process.
  if (pid_ > 0) kill(pid_, SIGKILL);
}

void SmtSession::send(const std::string& text) { write_all(to_solver_, text); }

std::string SmtSession::read_line(long deadline) {
  for (;;) {
    auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      return line;
    }
    long left = deadline - now_ms();
    if (left <= 0) {
      stop();
      throw Error(ErrorKind::SolverTimeout, "solver did not answer in time");
    }
    pollfd pfd{from_solver_, POLLIN, 0};
    int r = poll(&pfd, 1, static_cast<int>(std::min<long>(left, 200)));
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) {
      if (cancelled_) {
        stop();
        throw Error(ErrorKind::SolverCrashed, "solver session cancelled");
      }
      continue;
    }
    char buf[4096];
    ssize_t n = ::read(from_solver_, buf, sizeof buf);
    if (n <= 0) {
      stop();
      throw Error(ErrorKind::SolverCrashed, cancelled_ ? "solver session cancelled" : "solver process exited");
    }
    buffer_.append(buf, static_cast<std::size_t>(n));
  }
}

std::string SmtSession::read_sexp(long deadline) {
  std::string acc;
  int depth = 0;
  bool started = false;
  for (;;) {
    std::string line = read_line(deadline);
    if (!started && line.rfind("(error", 0) == 0) continue;
    for (char c : line) {
      if (c == '(') ++depth, started = true;
      if (c == ')') --depth;
    }
    acc += line + "\n";
    if (started && depth <= 0) return acc;
    if (!started && !line.empty()) return acc;  // an atom
  }
}

SmtSession::RawAnswer SmtSession::run(const std::string& body, const std::vector<std::string>& eval) {
  std::string key = body;
  for (const std::string& e : eval) key += "\x01" + e;
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  ensure_started();
  ++queries_;
  static const bool trace = std::getenv("LCTRS_SMT_TRACE") != nullptr;
  long started = now_ms();
  long deadline = started + timeout_ms_ + 2000;
  // z3's default engine rarely settles quantified integer queries that
  // quantifier elimination decides at once
  bool qe = body.find("(forall ") != std::string::npos && command_.find("z3") != std::string::npos;
  std::string q = "(push 1)\n" + body + (qe ? "(check-sat-using (then qe smt))\n" : "(check-sat)\n");
  send(q);
  RawAnswer ans;
  bool error = false;
  for (;;) {
    std::string line = read_line(deadline);
    if (line == "sat") {
      ans.result = SatResult::Sat;
      break;
    }
    if (line == "unsat") {
      ans.result = SatResult::Unsat;
      break;
    }
    if (line == "unknown" || line == "timeout") break;
    if (line.rfind("(error", 0) == 0) error = true;
  }
  if (ans.result == SatResult::Sat && !eval.empty() && !error) {
    std::string gv = "(get-value (";
    for (std::size_t i = 0; i < eval.size(); ++i) gv += (i ? " " : "") + eval[i];
    send(gv + "))\n");
    std::string resp = read_sexp(deadline);
    try {
      auto es = read_sexps(resp);
      if (es.size() == 1 && es[0].is_list() && es[0].size() == eval.size()) {
        for (std::size_t i = 0; i < eval.size(); ++i) {
          if (es[0][i].size() == 2) {
            ans.values[eval[i]] = es[0][i][1].to_string();
          }
        }
      } else {
        error = true;
      }
    } catch (const Error&) {
      error = true;
    }
  }
  send(std::string("(pop 1)\n(echo \"") + kSync + "\")\n");
  for (;;) {
    std::string line = read_line(deadline);
    if (line == kSync || line == std::string("\"") + kSync + "\"") break;
    if (line.rfind("(error", 0) == 0) error = true;
  }
  if (error) ans = RawAnswer{};
  if (trace) {
    const char* r = ans.result == SatResult::Sat ? "sat" : ans.result == SatResult::Unsat ? "unsat" : "unknown";
    std::fprintf(stderr, "; %ld ms %s\n%s", now_ms() - started, r, body.c_str());
  }
  if (ans.result != SatResult::Unknown) cache_[key] = ans;
  return ans;
}

SmtSession::RawAnswer SmtSession::check_raw(const std::vector<std::pair<std::string, std::string>>& decls,
                                            const std::vector<std::string>& assertions,
                                            const std::vector<std::string>& eval) {
  std::string body;
  for (const auto& [n, s] : decls) body += "(declare-const " + n + " " + s + ")\n";
  for (const std::string& a : assertions) body += "(assert " + a + ")\n";
  return run(body, eval);
}

SatAnswer SmtSession::check_sat(const Term& phi) {
  if (!phi.sort().is_bool()) throw Error(ErrorKind::SortMismatch, "constraint is not boolean: " + phi.to_string());
  if (phi.is_value()) {
    SatAnswer a;
    a.result = phi.symbol().value->as_bool() ? SatResult::Sat : SatResult::Unsat;
    return a;
  }
  std::vector<std::pair<std::string, std::string>> decls;
  std::vector<std::string> eval;
  std::vector<Var> vs;
  for (const Var& x : vars(phi)) {
    decls.emplace_back(smt_symbol(x), smt_sort(x.sort));
    eval.push_back(smt_symbol(x));
    vs.push_back(x);
  }
  RawAnswer raw = check_raw(decls, {smt_term(phi)}, eval);
  SatAnswer a;
  a.result = raw.result;
  if (a.result == SatResult::Sat) {
    for (const Var& x : vs) {
      auto it = raw.values.find(smt_symbol(x));
      std::optional<Value> v = it == raw.values.end() ? std::nullopt : parse_smt_value(it->second, x.sort);
      if (!v) return SatAnswer{};  // a model we cannot read is as good as none
      a.model.emplace(x, *v);
    }
  }
  return a;
}

ValidAnswer SmtSession::check_valid(const Term& phi) {
  SatAnswer s = check_sat(mk_not(phi));
  ValidAnswer v;
  if (s.result == SatResult::Unsat) v.result = Validity::Valid;
  if (s.result == SatResult::Sat) {
    v.result = Validity::Invalid;
    v.counter_model = std::move(s.model);
  }
  return v;
}

std::optional<Subst> SmtSession::find_values(const Term& phi, const VarSet& targets) {
  SatAnswer s = check_sat(phi);
  if (s.result != SatResult::Sat) return std::nullopt;
  Subst out;
  for (const Var& x : targets) {
    auto it = s.model.find(x);
    if (it == s.model.end()) {
      // not constrained by φ: any value of the sort will do
      if (x.sort.is_bool()) out.bind(x, Term::value(Value::boolean(false)));
      else if (x.sort.is_int()) out.bind(x, Term::value(Value::integer(0)));
      else if (x.sort.is_real()) out.bind(x, Term::value(Value::real(0)));
      else out.bind(x, Term::value(Value::bitvec(BitVec(x.sort.width, 0))));
    } else {
      out.bind(x, Term::value(it->second));
    }
  }
  return out;
}

}  // namespace lctrs
