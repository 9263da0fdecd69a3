#include <gtest/gtest.h>

#include "refute/oracle.hpp"
#include "refute/parser.hpp"
#include "support.hpp"

using namespace refute;
using namespace refute::testing;

namespace {

std::vector<Clause> dave() {
  return clauses_of({"Green(x, False) ∨ Nice(x, True)", "Smart(x, False) ∨ Green(x, True)", "Smart(Dave, True)"});
}

// Independent check: recursive enumeration of every assignment over the
// ground atoms, evaluating clauses literal by literal.
bool naive_entails(const GroundProblem& g, std::size_t goal_atom, bool goal_positive) {
  const std::size_t n = g.atoms.size();
  for (std::uint64_t a = 0; a < (1ull << n); ++a) {
    bool model = true;
    for (const auto& clause : g.clauses) {
      bool sat = false;
      for (const GroundLiteral& l : clause) sat = sat || (((a >> l.atom) & 1u) == (l.positive ? 1u : 0u));
      if (!sat) {
        model = false;
        break;
      }
    }
    if (model && (((a >> goal_atom) & 1u) == (goal_positive ? 1u : 0u)) == false) return false;
  }
  return true;
}

}  // namespace

TEST(Ground, InstantiationCounts) {
  std::vector<Clause> rule{clause_of("P(x, False) ∨ Q(x, True)")};
  EXPECT_EQ(ground(rule, {"Dave"}).clauses.size(), 1u);
  EXPECT_EQ(ground(rule, {"A", "B"}).clauses.size(), 2u);
  std::vector<Clause> facts = clauses_of({"P(A, True)", "Q(B, False) ∨ P(A, True)"});
  GroundProblem g = ground(facts, {"A", "B"});
  EXPECT_EQ(g.clauses.size(), 2u);
  EXPECT_EQ(g.atoms.size(), 2u);
}

TEST(Ground, AtomCap) {
  std::vector<Clause> rule{clause_of("R(x, y, True)")};
  EXPECT_THROW(ground(rule, {"A", "B", "C", "D", "E"}, 24), AtomCapExceeded);
}

TEST(Ground, FunctionTermsAreExempt) {
  std::vector<Clause> sk{Clause({lit("P", {Term::function("sk1", {var("x")})})})};
  EXPECT_THROW(ground(sk, {"A"}), OracleExempt);
}

// The Dave problem over {Dave} has 3 ground atoms and its premises force
// Nice(Dave): every model has Smart, hence Green, hence Nice.
TEST(Entails, DaveByEnumeration) {
  const std::vector<std::string> consts{"Dave"};
  EXPECT_FALSE(entails(dave(), clause_of("Nice(Dave, False)"), consts));
  EXPECT_TRUE(entails(dave(), clause_of("Nice(Dave, True)"), consts));
  GroundProblem g = ground(dave(), consts);
  ASSERT_EQ(g.atoms.size(), 3u);
  const std::size_t nice = g.atom_id(lit("Nice", {con("Dave")}));
  EXPECT_TRUE(naive_entails(g, nice, true));
  EXPECT_FALSE(naive_entails(g, nice, false));
}

TEST(Entails, EmptyPremisesEntailNothing) {
  EXPECT_FALSE(entails({}, clause_of("A(C, True)"), {"C"}));
  EXPECT_FALSE(entails({}, clause_of("A(C, False)"), {"C"}));
}

TEST(Entails, RequiresGroundUnit) {
  EXPECT_THROW(entails({}, clause_of("A(x, True)"), {"C"}), std::invalid_argument);
}

TEST(OracleAnswer, Examples) {
  std::vector<std::string> consts{"Dave"};
  EXPECT_EQ(oracle_answer(dave(), clause_of("Nice(Dave, False)"), consts), Answer::False);
  EXPECT_EQ(oracle_answer(clauses_of({"A(C, True)"}), clause_of("A(C, True)"), {"C"}), Answer::True);
  EXPECT_EQ(oracle_answer(clauses_of({"A(C, True)", "A(C, False)"}), clause_of("B(C, True)"), {"C"}),
            Answer::SelfContradictory);
  EXPECT_EQ(oracle_answer(clauses_of({"A(C, True)"}), clause_of("B(C, True)"), {"C"}), Answer::Unknown);
}

TEST(OracleAnswer, FromDecomposition) {
  Decomposition d = decompose({parse_formula("∀x (Green(x, False) ∨ Nice(x, True))"),
                               parse_formula("∀x (Smart(x, False) ∨ Green(x, True))"),
                               parse_formula("Smart(Dave, True)")},
                              parse_formula("Nice(Dave, False)"));
  EXPECT_FALSE(oracle_exempt(d));
  EXPECT_EQ(oracle_answer(d), Answer::False);
  Decomposition sk = decompose({parse_formula("∀x ∃y Knows(x, y)")}, parse_formula("Knows(Anne, Bob)"));
  EXPECT_TRUE(oracle_exempt(sk));
}

// Bit-sliced enumeration agrees with the naive loop on random ground sets,
// including sets with more than six atoms (several 64-bit blocks).
TEST(OracleProperty, AgreesWithNaiveEnumeration) {
  Rng r(31);
  for (int i = 0; i < 300; ++i) {
    std::vector<Clause> cs;
    for (std::size_t k = 0, n = 1 + r.below(8); k < n; ++k) cs.push_back(random_clause(r, 3, r.coin()));
    const std::vector<std::string> consts{"Anne", "Bob"};
    GroundProblem g;
    try {
      g = ground(cs, consts, 16);
    } catch (const AtomCapExceeded&) {
      continue;
    }
    for (std::size_t atom = 0; atom < g.atoms.size(); ++atom) {
      for (bool pos : {true, false}) {
        Literal goal = g.atoms[atom];
        goal.sign = pos ? Sign::Positive : Sign::Negative;
        EXPECT_EQ(entails(cs, Clause({goal}), consts, 16), naive_entails(g, atom, pos));
      }
    }
  }
}

TEST(Satisfiable, Basic) {
  EXPECT_TRUE(satisfiable(clauses_of({"A(C, True)"}), {"C"}));
  EXPECT_FALSE(satisfiable(clauses_of({"A(C, True)", "A(x, False)"}), {"C"}));
  EXPECT_TRUE(satisfiable({}, {"C"}));
}
