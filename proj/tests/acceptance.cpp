// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "refute/engine.hpp"
#include "refute/harness.hpp"
#include "refute/parser.hpp"
#include "refute/resolver.hpp"
#include "refute/trace.hpp"
#include "support.hpp"

using namespace refute;
using namespace refute::testing;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int n, const std::string& title, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << n << ": " << title << " (" << detail << ")\n";
  if (!ok) ++failures;
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string capture(const std::string& cmd, int* code) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    *code = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  *code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

void case_study() {
  const auto t0 = Clock::now();
  std::vector<Formula> premises{parse_formula("∀x (Green(x, False) ∨ Nice(x, True))"),
                                parse_formula("∀x (Smart(x, False) ∨ Green(x, True))"),
                                parse_formula("Smart(Dave, True)")};
  Verdict v = solve(premises, parse_formula("Nice(Dave, False)"), EngineConfig{});
  const double ms = ms_since(t0);
  v.id = "dave";
  VerdictJsonOptions opts;
  opts.include_timing = false;
  const bool golden = verdict_to_json(v, opts).dump(2) + "\n" ==
                      read_file(std::string(REFUTE_SOURCE_DIR) + "/tests/golden/dave_verdict.json");
  const auto& s = v.from_s.trace;
  const bool steps = s.size() == 3 && render_clause(s[0].resolvent) == "Green(Dave, False)" &&
                     render_clause(s[1].resolvent) == "Smart(Dave, False)" && s[2].resolvent.empty() &&
                     s[2].outcome == ResolveOutcome::Kind::Contradiction;
  const bool neg = v.from_neg_s.trace.empty() && v.from_neg_s.stop == StopReason::Exhausted &&
                   path_to_json(v.from_neg_s, TraceLevel::Full).dump().find("No complementary clause was found") !=
                       std::string::npos;
  std::ostringstream d;
  d << "answer " << to_string(v.answer) << ", golden " << (golden ? "match" : "differs") << ", " << ms << " ms";
  report(1, "Dave problem trace", v.answer == Answer::False && golden && steps && neg && ms < 50, d.str());
}

void bradley() {
  ResolveOutcome out = resolve(clause_of("Difficult(Bradley, True) ∨ Known(x, False)"), 0,
                               clause_of("Difficult(x, False) ∨ Embarrassed(x, True) ∨ Colorful(x, False)"), 0);
  const std::string got = render_clause(out.clause);
  const bool ok = out.kind == ResolveOutcome::Kind::Resolvent &&
                  got == "Known(x, False) ∨ Embarrassed(Bradley, True) ∨ Colorful(Bradley, False)" &&
                  out.clause[0].args[0].is_variable();
  report(2, "Bradley resolution", ok, got);
}

void gary() {
  ResolveOutcome out = resolve(clause_of("Smart(Gary, False)"), 0, clause_of("Smart(Gary, True) ∨ Nice(x, False)"), 0);
  const std::string got = render_clause(out.clause);
  report(3, "instantiation generality", out.kind == ResolveOutcome::Kind::Resolvent && got == "Nice(x, False)", got);
}

void classification() {
  struct Row {
    bool s, neg;
    Answer want;
  };
  const Row rows[] = {{true, false, Answer::False},
                      {false, true, Answer::True},
                      {false, false, Answer::Unknown},
                      {true, true, Answer::SelfContradictory}};
  int ok = 0;
  for (const Row& r : rows)
    ok += classify(Determination{r.s, PathKind::FromS}, Determination{r.neg, PathKind::FromNegS}) == r.want;
  report(4, "answer classification", ok == 4, std::to_string(ok) + "/4 cases");
}

// Criteria 5 and 6 share one suite.
void soundness_and_completeness() {
  SuiteParams params{.count = 500, .constants = 4, .predicates = 5, .clauses = 12, .depth = 0};
  BenchConfig cfg;
  cfg.engine.i_max = 30;
  cfg.jobs = 4;
  const auto t0 = Clock::now();
  Report r = run_benchmark(generate_suite(7, params), cfg);
  const double secs = ms_since(t0) / 1000;
  std::ostringstream d5;
  d5 << r.total << " problems, " << r.oracle_checked << " checked, " << r.soundness_violations << " violations, "
     << secs << " s";
  report(5, "soundness against enumeration", r.total >= 500 && r.oracle_checked == r.total &&
                                                 r.soundness_violations == 0 && secs < 60,
         d5.str());

  bool tagged = true;
  for (const ProblemRecord& rec : r.records)
    if (rec.oracle && rec.answer && *rec.answer != *rec.oracle)
      tagged = tagged && *rec.answer == Answer::Unknown && rec.unknown_cause.has_value();
  const double agreement = static_cast<double>(r.oracle_agree) / static_cast<double>(r.oracle_checked);
  const std::string json = report_to_json(r, false).dump();
  const bool surfaced = json.find("\"insufficient_iteration_rate\"") != std::string::npos;
  std::ostringstream d6;
  d6 << 100 * agreement << "% agreement, insufficient-iteration rate " << 100 * r.insufficient_iteration_rate << "%";
  report(6, "completeness floor", agreement >= 0.90 && tagged && surfaced, d6.str());
}

void cnf_equivalence() {
  Rng r(7001);
  std::size_t formulas = 0, mismatches = 0, with_xor_iff = 0;
  std::function<bool(const Formula&)> has_xor_iff = [&](const Formula& f) {
    if (f.kind == Formula::Kind::Xor || f.kind == Formula::Kind::Iff) return true;
    for (const Formula& c : f.children)
      if (has_xor_iff(c)) return true;
    return false;
  };
  while (formulas < 1000) {
    const std::size_t atoms = 1 + r.below(8);
    Formula f = random_prop_formula(r, atoms, 4);
    ++formulas;
    with_xor_iff += has_xor_iff(f);
    SkolemCounter sk;
    std::vector<Clause> cnf =
        to_cnf(skolemize_and_prenex(standardize_bound_variables(to_nnf(eliminate_connectives(f))), sk), {}, 1u << 16);
    for (std::uint32_t a = 0; a < (1u << atoms); ++a)
      if (eval_prop(f, a) != eval_cnf(cnf, a)) {
        ++mismatches;
        break;
      }
  }
  report(7, "CNF truth-table equivalence", mismatches == 0 && with_xor_iff > 0,
         std::to_string(formulas) + " formulas, " + std::to_string(with_xor_iff) + " with ⊕ or ↔, " +
             std::to_string(mismatches) + " mismatches");
}

void depth_scaling() {
  bool ok = true;
  double base = 0;
  std::ostringstream d;
  d.precision(3);
  for (int depth = 1; depth <= 5; ++depth) {
    SuiteParams params{.count = 200, .constants = 3, .predicates = 8, .clauses = 12, .depth = depth};
    BenchConfig cfg;
    cfg.engine.i_max = 30;
    cfg.jobs = 4;
    Report r = run_benchmark(generate_suite(11, params), cfg);
    if (depth == 1) base = r.mean_steps;
    ok = ok && r.accuracy >= 0.95 && r.mean_steps <= depth * base * 1.5;
    d << (depth > 1 ? "; " : "") << "d" << depth << " " << 100 * r.accuracy << "% " << r.mean_steps << " steps";
  }
  report(8, "depth scaling", ok, d.str());
}

void determinism() {
  SuiteParams params{.count = 200, .constants = 4, .predicates = 5, .clauses = 12};
  BenchConfig cfg;
  cfg.jobs = 4;
  auto suite = generate_suite(99, params);
  const std::string a = report_to_json(run_benchmark(suite, cfg), false).dump();
  const std::string b = report_to_json(run_benchmark(suite, cfg), false).dump();
  const std::string cmd = std::string(REFUTE_CLI) + " bench --seed 99 --count 200 --jobs 4 --json --no-timing";
  int c1 = 0, c2 = 0;
  const std::string x = capture(cmd, &c1);
  const std::string y = capture(cmd, &c2);
  const bool ok = a == b && c1 == 0 && c2 == 0 && !x.empty() && x == y;
  report(9, "bench determinism", ok, "library and CLI reports " + std::string(ok ? "byte-identical" : "differ"));
}

void parser_round_trip() {
  Rng r(1010);
  std::size_t failures_seen = 0;
  for (int i = 0; i < 1000; ++i) {
    Formula f = random_fo_formula(r, 4);
    try {
      if (!(parse_formula(render(f)) == f)) ++failures_seen;
    } catch (const ParseError&) {
      ++failures_seen;
    }
  }
  report(10, "parser round trip", failures_seen == 0, "1000 formulas, " + std::to_string(failures_seen) + " failures");
}

}  // namespace

int main() {
  case_study();
  bradley();
  gary();
  classification();
  soundness_and_completeness();
  cnf_equivalence();
  depth_scaling();
  determinism();
  parser_round_trip();
  std::cout << (failures ? "acceptance: FAILED\n" : "acceptance: all criteria pass\n");
  return failures ? 1 : 0;
}
