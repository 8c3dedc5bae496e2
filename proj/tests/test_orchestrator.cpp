#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include "lctrs/problem.hpp"
#include "lctrs/orchestrator.hpp"

#include <catch_amalgamated.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <sys/wait.h>
#include <thread>

using namespace lctrs;
using lctrs::testing::fixture;
using lctrs::testing::child_processes;
using lctrs::testing::fixture_path;

namespace {

Problem load(const std::string& name) { return preprocess(parse_problem(fixture(name))); }

struct CliResult {
  int status;
  std::string out;
};

CliResult cli(const std::string& args, const std::string& input_cmd = "") {
  std::string cmd = std::string(LCTRS_CLI_PATH) + " " + args + " 2>/dev/null";
  if (!input_cmd.empty()) cmd = input_cmd + " | " + cmd;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t k = fread(buf.data(), 1, buf.size(), f)) out.append(buf.data(), k);
  int st = pclose(f);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("strategy parser") {
  Strategy s = parse_strategy("wo");
  REQUIRE(s.methods.size() == 1);
  CHECK(s.methods[0].name == "wo");
  CHECK_FALSE(s.methods[0].steps);

  s = parse_strategy("kb; nc");
  REQUIRE(s.methods.size() == 2);
  CHECK(s.methods[1].name == "nc");

  s = parse_strategy(" adc(steps=4) ; pcp(splits=1, steps=2);");
  REQUIRE(s.methods.size() == 2);
  CHECK(s.methods[0].steps == 4u);
  CHECK_FALSE(s.methods[0].splits);
  CHECK(s.methods[1].splits == 1u);
  CHECK(s.methods[1].steps == 2u);

  CHECK(parse_strategy("").methods.size() == confluence_methods().size());

  try {
    parse_strategy("wo; frobnicate");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StrategyParseError);
    std::string msg = e.what();
    CHECK(msg.find("frobnicate") != std::string::npos);
    CHECK(msg.find("valid methods: o, wo, kb") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_strategy("adc(depth=3)"), Error);
  CHECK_THROWS_AS(parse_strategy("adc(steps=)"), Error);
  CHECK_THROWS_AS(parse_strategy("kb", termination_methods()), Error);
  CHECK(parse_strategy("vc; svc", termination_methods()).methods.size() == 2);
}

TEST_CASE("first definitive answer wins and solvers are gone") {
  Budget b;
  b.timeout_seconds = 60;
  std::vector<std::string> started;
  std::mutex mu;
  b.log = [&](const std::string& l) {
    std::lock_guard<std::mutex> lock(mu);
    started.push_back(l);
  };
  Verdict v = prove_confluence(load("example1.ari"), parse_strategy(""), b);
  CHECK(v.answer == Answer::Yes);
  CHECK(v.method != "none");
  CHECK(SmtSession::live_processes() == 0);
  CHECK(child_processes() == 0);
  CHECK_FALSE(started.empty());

  v = prove_confluence(load("example6.ari"), parse_strategy(""), b);
  CHECK(v.answer == Answer::No);
  REQUIRE(v.counterexample);
  CHECK(child_processes() == 0);
}

TEST_CASE("non-confluence always joins the run") {
  Budget b;
  Verdict v = prove_confluence(load("example6.ari"), parse_strategy("wo"), b);
  CHECK(v.answer == Answer::No);
  CHECK(v.method == "non-confluence");
}

TEST_CASE("all methods inconclusive gives reasons per method") {
  Budget b;
  Verdict v = prove_confluence(load("fig1.ari"), parse_strategy("pcp"), b);
  CHECK(v.answer == Answer::Maybe);
  CHECK(v.method == "none");
  bool pcp = false, nc = false;
  for (const std::string& r : v.reasons) {
    pcp = pcp || r.rfind("pcp: ", 0) == 0;
    nc = nc || r.rfind("nc: ", 0) == 0;
  }
  CHECK(pcp);
  CHECK(nc);
}

TEST_CASE("timeout yields maybe within the budget") {
  Budget b;
  b.timeout_seconds = 0.5;
  auto t0 = std::chrono::steady_clock::now();
  Verdict v = prove_confluence(load("example5.ari"), parse_strategy(""), b);
  double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(v.answer == Answer::Maybe);
  REQUIRE_FALSE(v.reasons.empty());
  CHECK(v.reasons[0].rfind("timeout", 0) == 0);
  CHECK(took < 2.0);
  CHECK(child_processes() == 0);
}

TEST_CASE("interrupt flag stops the run") {
  std::atomic<bool> stop{false};
  Budget b;
  b.interrupt = &stop;
  std::thread t([&] {
    std::this_thread::sleep_for(std::chrono::milliseconds(200));
    stop = true;
  });
  Verdict v = prove_confluence(load("example5.ari"), parse_strategy(""), b);
  t.join();
  CHECK(v.answer == Answer::Maybe);
  REQUIRE_FALSE(v.reasons.empty());
  CHECK(v.reasons[0] == "interrupted");
  CHECK(v.seconds < 1.5);
  CHECK(child_processes() == 0);
}

TEST_CASE("repeated runs leave no solver behind") {
  Budget b;
  b.threads = 4;
  for (int i = 0; i < 5; ++i) {
    Verdict v = prove_confluence(load(i % 2 ? "example3.ari" : "example6.ari"), parse_strategy(""), b);
    CHECK(v.answer == (i % 2 ? Answer::Yes : Answer::No));
    CHECK(SmtSession::live_processes() == 0);
    CHECK(child_processes() == 0);
  }
}

TEST_CASE("termination under a budget") {
  Budget b;
  Verdict v = run_termination(load("example3.ari"), {}, b);
  CHECK(v.answer == Answer::Yes);
  v = run_termination(load("fig4.ari"), {}, b);
  CHECK(v.answer == Answer::Maybe);
  CHECK(child_processes() == 0);
}

TEST_CASE("command line") {
  auto ex = [](const std::string& n) { return fixture_path(n); };
  CliResult r = cli("confluence " + ex("example6.ari"));
  CHECK(r.status == 0);
  CHECK(r.out == "NO\n");

  r = cli("confluence --proof --strategy 'kb; nc' " + ex("example3.ari"));
  CHECK(r.status == 0);
  CHECK(first_line(r.out) == "YES");
  CHECK(r.out.find("split on") != std::string::npos);

  r = cli("confluence --timeout 1 < " + ex("example5.ari"));
  CHECK(r.status == 0);
  CHECK(r.out == "MAYBE\n");

  r = cli("termination --strategy subterm " + ex("decrement.ari"));
  CHECK(first_line(r.out) == "MAYBE");
  r = cli("termination --strategy vc " + ex("decrement.ari"));
  CHECK(first_line(r.out) == "YES");
  r = cli("termination --proof " + ex("example3.ari"));
  CHECK(first_line(r.out) == "YES");
  CHECK(r.out.find("f > g > h > a > b > c") != std::string::npos);

  r = cli("confluence --print-ccps " + ex("example6.ari"));
  CHECK(first_line(r.out) == "NO");
  CHECK(r.out.find("(ccp ") != std::string::npos);
  r = cli("termination --print-dp-graph " + ex("example3.ari"));
  CHECK(r.out.find("(dp-graph") != std::string::npos);

  r = cli("confluence --to-ari " + ex("fig1.ari"));
  CHECK(r.status == 0);
  CHECK(print_problem(parse_problem(r.out)) == r.out);

  CHECK(cli("confluence --strategy frobnicate " + ex("example1.ari")).status == 2);
  CHECK(cli("confluence /nonexistent.ari").status == 2);
  CHECK(cli("confluence --timeout 0 " + ex("example1.ari")).status == 2);
  CHECK(cli("confluence --threads 0 " + ex("example1.ari")).status == 2);
  CHECK(cli("frobnicate").status == 2);
  CHECK(cli("--help").status == 0);
  CHECK(cli("confluence", "printf '(format LCTRS) (fun'").status == 2);
}

TEST_CASE("every fixture gets a verdict on line one within the timeout") {
  std::vector<std::string> files;
  for (const auto& dir : {fixture_path(""), fixture_path("roundtrip")}) {
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
      if (e.path().extension() == ".ari") files.push_back(e.path().string());
    }
  }
  REQUIRE(files.size() >= 30);
  for (const std::string& f : files) {
    for (const char* mode : {"confluence", "termination"}) {
      INFO(mode << " " << f);
      auto t0 = std::chrono::steady_clock::now();
      CliResult r = cli(std::string(mode) + " --timeout 2 " + f);
      double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      CHECK(r.status == 0);
      std::string line = first_line(r.out);
      CHECK((line == "YES" || line == "NO" || line == "MAYBE"));
      CHECK(took < 4.0);
    }
  }
}

TEST_CASE("an interrupted command line run prints maybe") {
  std::string cmd = "sh -c '" + std::string(LCTRS_CLI_PATH) + " confluence --timeout 30 " +
                    fixture_path("example5.ari") + " & p=$!; sleep 0.5; kill -INT $p; wait $p; echo \"exit $?\"'";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::string out;
  std::array<char, 256> buf;
  while (std::size_t k = fread(buf.data(), 1, buf.size(), f)) out.append(buf.data(), k);
  pclose(f);
  CHECK(out == "MAYBE\nexit 0\n");
}
