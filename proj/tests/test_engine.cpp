#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "refute/engine.hpp"
#include "refute/harness.hpp"
#include "refute/oracle.hpp"
#include "refute/parser.hpp"
#include "refute/trace.hpp"
#include "support.hpp"

using namespace refute;
using namespace refute::testing;

namespace {

Decomposition dave_problem() {
  std::vector<Formula> premises{parse_formula("∀x (Green(x, False) ∨ Nice(x, True))"),
                                parse_formula("∀x (Smart(x, False) ∨ Green(x, True))"),
                                parse_formula("Smart(Dave, True)")};
  return decompose(premises, parse_formula("Nice(Dave, False)"));
}

Decomposition decomposed(const Problem& p) {
  std::vector<Formula> premises;
  for (const std::string& s : p.premises) premises.push_back(parse_formula(s));
  return decompose(premises, parse_formula(p.query));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Engine, DaveFromS) {
  Decomposition d = dave_problem();
  PathResult r = prove_path(d.premises, d.query, PathKind::FromS, EngineConfig{});
  EXPECT_TRUE(r.determination.entails);
  EXPECT_EQ(r.stop, StopReason::Contradiction);
  ASSERT_EQ(r.trace.size(), 3u);
  EXPECT_EQ(render_clause(r.trace[0].resolvent), "Green(Dave, False)");
  EXPECT_EQ(render_clause(r.trace[1].resolvent), "Smart(Dave, False)");
  EXPECT_TRUE(r.trace[2].resolvent.empty());
  EXPECT_EQ(r.trace[2].outcome, ResolveOutcome::Kind::Contradiction);
  EXPECT_EQ(r.trace[0].complement.origin(), Origin::premise(1));
}

TEST(Engine, DaveFromNegS) {
  Decomposition d = dave_problem();
  PathResult r = prove_path(d.premises, d.negated_query, PathKind::FromNegS, EngineConfig{});
  EXPECT_FALSE(r.determination.entails);
  EXPECT_EQ(r.stop, StopReason::Exhausted);
  EXPECT_TRUE(r.trace.empty());
}

TEST(Engine, DaveVerdictMatchesGoldenJson) {
  Verdict v = solve(dave_problem(), EngineConfig{});
  v.id = "dave";
  EXPECT_EQ(v.answer, Answer::False);
  EXPECT_EQ(v.stats.iterations, 3u);
  VerdictJsonOptions opts;
  opts.include_timing = false;
  const std::string got = verdict_to_json(v, opts).dump(2) + "\n";
  EXPECT_EQ(got, read_file(std::string(REFUTE_SOURCE_DIR) + "/tests/golden/dave_verdict.json"));
}

TEST(Engine, UnitClashInOneStep) {
  std::vector<Clause> p = clauses_of({"A(C, True)"});
  PathResult r = prove_path(p, clause_of("A(C, False)"), PathKind::FromS, EngineConfig{});
  EXPECT_TRUE(r.determination.entails);
  EXPECT_EQ(r.iterations(), 1u);
}

TEST(Engine, Classification) {
  auto d = [](bool e, PathKind k) { return Determination{e, k}; };
  EXPECT_EQ(classify(d(true, PathKind::FromS), d(false, PathKind::FromNegS)), Answer::False);
  EXPECT_EQ(classify(d(false, PathKind::FromS), d(true, PathKind::FromNegS)), Answer::True);
  EXPECT_EQ(classify(d(false, PathKind::FromS), d(false, PathKind::FromNegS)), Answer::Unknown);
  EXPECT_EQ(classify(d(true, PathKind::FromS), d(true, PathKind::FromNegS)), Answer::SelfContradictory);
  EXPECT_THROW(classify(d(true, PathKind::FromNegS), d(true, PathKind::FromS)), std::invalid_argument);
}

TEST(Engine, EmptyPremisesGiveUnknown) {
  Verdict v = solve({}, parse_formula("Red(Anne)"), EngineConfig{});
  EXPECT_EQ(v.answer, Answer::Unknown);
}

TEST(Engine, InconsistentPremisesGiveSelfContradictory) {
  Verdict v = solve({parse_formula("A(C)"), parse_formula("¬A(C)")}, parse_formula("A(C)"), EngineConfig{});
  EXPECT_EQ(v.answer, Answer::SelfContradictory);
}

TEST(Engine, ConfigValidation) {
  EngineConfig c;
  c.i_max = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = EngineConfig{};
  c.backtrack_limit = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Engine, IMaxCapsResolveCalls) {
  // A long chain needs more steps than allowed.
  std::vector<Formula> premises{parse_formula("A0(C)")};
  for (int i = 0; i < 10; ++i)
    premises.push_back(parse_formula("A" + std::to_string(i) + "(x) → A" + std::to_string(i + 1) + "(x)"));
  EngineConfig cfg;
  cfg.i_max = 5;
  Verdict v = solve(premises, parse_formula("A10(C)"), cfg);
  EXPECT_EQ(v.answer, Answer::Unknown);
  EXPECT_TRUE(v.stats.i_max_hit);
  EXPECT_EQ(v.from_neg_s.stop, StopReason::IMaxHit);
  EXPECT_EQ(v.from_neg_s.iterations(), 5u);
  cfg.i_max = 11;
  EXPECT_EQ(solve(premises, parse_formula("A10(C)"), cfg).answer, Answer::True);
}

TEST(Engine, BacktracksOutOfDeadEnd) {
  // The first candidate for ¬Q(C) leads nowhere; the second proves it.
  std::vector<Formula> premises{parse_formula("P(x) → Q(x)"), parse_formula("R(x) → Q(x)"),
                                parse_formula("R(C)")};
  Verdict v = solve(premises, parse_formula("Q(C)"), EngineConfig{});
  EXPECT_EQ(v.answer, Answer::True);
  EXPECT_GE(v.from_neg_s.backtracks, 1u);
  bool any_backtracked = false;
  for (const StepRecord& s : v.from_neg_s.trace) any_backtracked = any_backtracked || s.backtracked;
  EXPECT_TRUE(any_backtracked);
}

TEST(Engine, DerivedClausesGetDerivedOrigin) {
  std::vector<Formula> premises{parse_formula("P(x) → Q(x)"), parse_formula("Q(x) → R(x)"),
                                parse_formula("R(x) → P(x)")};
  Verdict v = solve(premises, parse_formula("P(C)"), EngineConfig{});
  EXPECT_EQ(v.answer, Answer::Unknown);
  for (const StepRecord& s : v.from_s.trace)
    EXPECT_NE(s.complement.origin().kind, Origin::Kind::Query) << "FromS must not see S_n's negation";
}

// {{{ Properties over generated problems

namespace {

std::vector<Problem> suite(std::uint64_t seed, std::size_t count) {
  SuiteParams p;
  p.count = count;
  p.constants = 3;
  p.predicates = 5;
  p.clauses = 10;
  return generate_suite(seed, p);
}

}  // namespace

TEST(EngineProperty, StepAccountingAndPathIndependence) {
  EngineConfig cfg;
  cfg.i_max = 30;
  for (const Problem& p : suite(41, 60)) {
    Decomposition d = decomposed(p);
    Verdict v = solve(d, cfg);
    EXPECT_EQ(v.stats.iterations, v.from_s.trace.size() + v.from_neg_s.trace.size());
    PathResult alone = prove_path(d.premises, d.query, PathKind::FromS, cfg);
    EXPECT_EQ(alone.determination, v.d_s);
    EXPECT_EQ(alone.trace.size(), v.from_s.trace.size());
    EXPECT_EQ(classify(v.d_s, v.d_neg_s), v.answer);
  }
}

// Raising I_max never loses an entailment.
TEST(EngineProperty, IMaxMonotonicity) {
  for (const Problem& p : suite(43, 60)) {
    Decomposition d = decomposed(p);
    bool entailed = false;
    for (std::size_t imax = 1; imax <= 30; ++imax) {
      EngineConfig cfg;
      cfg.i_max = imax;
      PathResult r = prove_path(d.premises, d.negated_query, PathKind::FromNegS, cfg);
      if (entailed) EXPECT_TRUE(r.determination.entails) << p.id << " i_max " << imax;
      entailed = entailed || r.determination.entails;
    }
  }
}

// An entailment claim from either path is confirmed by enumeration.
TEST(EngineProperty, EntailmentClaimsAreSound) {
  EngineConfig cfg;
  cfg.i_max = 30;
  for (const Problem& p : suite(47, 150)) {
    Decomposition d = decomposed(p);
    Verdict v = solve(d, cfg);
    const auto consts = collect_constants([&] {
      auto all = d.premises;
      all.push_back(d.query);
      return all;
    }());
    if (v.d_neg_s.entails) EXPECT_TRUE(entails(d.premises, d.query, consts)) << p.id;
    if (v.d_s.entails) EXPECT_TRUE(entails(d.premises, d.negated_query, consts)) << p.id;
  }
}

// The trace is append-only: every snapshot's trace length is a prefix point.
TEST(EngineProperty, StepNumbersAreConsecutive) {
  for (const Problem& p : suite(53, 40)) {
    Verdict v = solve(decomposed(p), EngineConfig{});
    for (const PathResult* r : {&v.from_s, &v.from_neg_s})
      for (std::size_t i = 0; i < r->trace.size(); ++i) EXPECT_EQ(r->trace[i].step, i + 1);
  }
}

// }}}
