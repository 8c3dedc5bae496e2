#include "lctrs/critical_pairs.hpp"
#include "lctrs/orchestrator.hpp"
#include "lctrs/problem.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted = true; }

struct RunConfig {
  std::string input;
  double timeout = 60;
  unsigned threads = 8;
  std::string strategy;
  bool proof = false;
  bool debug = false;
  bool print_ccps = false;
  bool print_cpcps = false;
  bool print_dp_graph = false;
  bool to_ari = false;
  std::string solver;
};

void add_options(CLI::App& cmd, RunConfig& c) {
  cmd.add_option("input", c.input, "ARI problem file; standard input when omitted or -");
  cmd.add_option("--timeout", c.timeout, "overall time limit in seconds")->check(CLI::PositiveNumber);
  cmd.add_option("--threads", c.threads, "methods run at the same time")->check(CLI::Range(1u, 1024u));
  cmd.add_option("--strategy", c.strategy, "semicolon-separated methods, e.g. \"wo; adc(steps=4); pcp\"");
  cmd.add_flag("--proof", c.proof, "print the proof after the verdict");
  cmd.add_flag("--debug", c.debug, "progress messages on standard error");
  cmd.add_flag("--print-ccps", c.print_ccps, "print the constrained critical pairs");
  cmd.add_flag("--print-cpcps", c.print_cpcps, "print the constrained parallel critical pairs");
  cmd.add_flag("--print-dp-graph", c.print_dp_graph, "print the estimated dependency graph");
  cmd.add_flag("--to-ari", c.to_ari, "print the fully sorted problem and exit");
  cmd.add_option("--solver", c.solver, "SMT solver command line (SMT-LIB 2 on standard input)");
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw lctrs::Error(lctrs::ErrorKind::ParseError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_verdict(const lctrs::Verdict& v, bool proof) {
  if (proof) {
    std::cout << v.to_text();
  } else {
    std::cout << lctrs::to_string(v.answer) << "\n";
  }
}

void print_extras(const RunConfig& c, const lctrs::Problem& p, const lctrs::Budget& budget) {
  if (!c.print_ccps && !c.print_cpcps && !c.print_dp_graph) return;
  lctrs::SmtSession smt(budget.solver);
  lctrs::Rewriter rw(p.rules, smt);
  if (c.print_ccps) {
    for (const auto& cp : lctrs::compute_ccps(p.rules, rw)) std::cout << cp.to_sexp() << "\n";
  }
  if (c.print_cpcps) {
    for (const auto& cp : lctrs::compute_cpcps(p.rules, rw)) std::cout << cp.to_sexp() << "\n";
  }
  if (c.print_dp_graph) std::cout << lctrs::dp_graph(lctrs::compute_dps(p), smt).to_sexp() << "\n";
}

int run(const std::string& mode, const RunConfig& c) {
  lctrs::Problem raw = lctrs::parse_problem(read_input(c.input));
  if (c.to_ari) {
    std::cout << lctrs::print_problem(raw);
    return 0;
  }
  lctrs::Problem p = lctrs::preprocess(raw);
  lctrs::Budget budget;
  budget.timeout_seconds = c.timeout;
  budget.threads = c.threads;
  if (!c.solver.empty()) budget.solver = c.solver;
  budget.interrupt = &g_interrupted;
  if (c.debug) budget.log = [](const std::string& l) { std::cerr << "[lctrs] " << l << std::endl; };

  lctrs::Verdict v;
  if (mode == "confluence") {
    lctrs::Strategy s = lctrs::parse_strategy(c.strategy);
    v = lctrs::prove_confluence(p, s, budget);
  } else {
    lctrs::TerminationOptions opt;
    if (!c.strategy.empty()) {
      lctrs::Strategy s = lctrs::parse_strategy(c.strategy, lctrs::termination_methods());
      opt.methods.clear();
      for (const auto& m : s.methods) opt.methods.push_back(m.name);
      opt.direct_rpo = std::find(opt.methods.begin(), opt.methods.end(), "rpo") != opt.methods.end();
    }
    v = lctrs::run_termination(p, opt, budget);
  }
  if (c.debug) std::cerr << "[lctrs] " << v.method << " after " << v.seconds << " s" << std::endl;
  print_verdict(v, c.proof);
  print_extras(c, p, budget);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confluence and termination analysis of logically constrained rewrite systems"};
  app.require_subcommand(1, 1);
  RunConfig conf_cfg, term_cfg;
  CLI::App* conf = app.add_subcommand("confluence", "prove or disprove confluence");
  CLI::App* term = app.add_subcommand("termination", "prove termination");
  add_options(*conf, conf_cfg);
  add_options(*term, term_cfg);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::signal(SIGPIPE, SIG_IGN);
  try {
    if (conf->parsed()) return run("confluence", conf_cfg);
    return run("termination", term_cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
}
