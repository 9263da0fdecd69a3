#include <gtest/gtest.h>

#include <tuple>

#include "refute/search.hpp"
#include "support.hpp"

using namespace refute;
using namespace refute::testing;

namespace {

std::vector<Clause> dave() {
  return clauses_of({"Green(x, False) ∨ Nice(x, True)", "Smart(x, False) ∨ Green(x, True)", "Smart(Dave, True)"});
}

}  // namespace

TEST(ClauseIndex, DaveBuckets) {
  ClauseIndex idx = build_index(dave());
  const auto& nice = idx.bucket("Nice", Sign::Positive);
  ASSERT_EQ(nice.size(), 1u);
  EXPECT_EQ(nice[0], (ClauseIndex::Entry{0, 1}));
  EXPECT_TRUE(idx.bucket("Nice", Sign::Negative).empty());
  EXPECT_EQ(idx.entry_count(), 5u);
}

TEST(ClauseIndex, Empty) {
  ClauseIndex idx = build_index({});
  EXPECT_EQ(idx.size(), 0u);
  EXPECT_EQ(idx.bucket_count(), 0u);
  EXPECT_TRUE(idx.bucket("P", Sign::Positive).empty());
}

TEST(ClauseIndex, AppendedClauseRanksAfterPremises) {
  ClauseIndex idx = build_index(dave());
  const std::size_t id = idx.add(clause_of("Green(Dave, False)", Origin::derived(1)));
  EXPECT_EQ(idx.at(id).clause->origin(), Origin::derived(1));
  for (std::size_t i = 0; i < id; ++i) EXPECT_LT(idx.at(i).rank, idx.at(id).rank);
  const auto& green = idx.bucket("Green", Sign::Negative);
  ASSERT_EQ(green.size(), 2u);
  // Shorter clause first, regardless of rank.
  EXPECT_EQ(green[0].clause_id, id);
}

// Every bucket equals a brute-force scan sorted by (length, rank, position).
TEST(ClauseIndexProperty, BucketsMatchBruteForce) {
  Rng r(8);
  for (int round = 0; round < 100; ++round) {
    ClauseIndex idx;
    std::vector<Clause> stored;
    const std::size_t n = r.below(12);
    for (std::size_t i = 0; i < n; ++i) {
      stored.push_back(random_clause(r, 4));
      idx.add(stored.back());
    }
    std::size_t total = 0;
    for (const std::string& p : kPreds) {
      for (Sign s : {Sign::Positive, Sign::Negative}) {
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> expected;
        for (std::size_t c = 0; c < stored.size(); ++c)
          for (std::size_t l = 0; l < stored[c].size(); ++l)
            if (stored[c][l].predicate == p && stored[c][l].sign == s) expected.emplace_back(stored[c].size(), c, l);
        std::sort(expected.begin(), expected.end());
        const auto& bucket = idx.bucket(p, s);
        ASSERT_EQ(bucket.size(), expected.size());
        for (std::size_t k = 0; k < bucket.size(); ++k) {
          EXPECT_EQ(bucket[k].clause_id, std::get<1>(expected[k]));
          EXPECT_EQ(bucket[k].literal_pos, std::get<2>(expected[k]));
        }
        total += bucket.size();
      }
    }
    EXPECT_EQ(total, idx.entry_count());
  }
}

TEST(FindComplements, DaveFirstStep) {
  ClauseIndex idx = build_index(dave());
  auto cands = find_complements(clause_of("Nice(Dave, False)"), idx);
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_EQ(render_clause(*cands[0].clause), "Green(x, False) ∨ Nice(x, True)");
  EXPECT_EQ(cands[0].mgu, (Substitution{{"x", con("Dave")}}));
  EXPECT_TRUE(find_complements(clause_of("Nice(Dave, True)"), idx).empty());
}

TEST(FindComplements, FactBeforeLongerClause) {
  ClauseIndex idx = build_index(dave());
  idx.add(clause_of("Smart(Dave, True) ∨ Red(Dave, True)"));
  auto cands = find_complements(clause_of("Smart(Dave, False)"), idx);
  ASSERT_EQ(cands.size(), 2u);
  EXPECT_EQ(render_clause(*cands[0].clause), "Smart(Dave, True)");
  EXPECT_EQ(cands[0].length, 1u);
}

// Candidates equal an exhaustive unify-every-pair scan, in sorted order.
TEST(FindComplementsProperty, MatchesBruteForce) {
  Rng r(21);
  for (int round = 0; round < 200; ++round) {
    std::vector<Clause> stored;
    for (std::size_t i = 0, n = r.below(10); i < n; ++i) stored.push_back(random_clause(r));
    ClauseIndex idx = build_index(stored);
    Clause cur = random_clause(r, 2);
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> expected;
    for (std::size_t c = 0; c < stored.size(); ++c) {
      auto [a, b] = standardize_apart(cur, stored[c]);
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
          if (a[i].predicate == b[j].predicate && a[i].sign != b[j].sign && a[i].arity() == b[j].arity() &&
              unify(a[i].args, b[j].args))
            expected.emplace_back(stored[c].size(), c, i, j);
    }
    std::sort(expected.begin(), expected.end());
    auto got = find_complements(cur, idx);
    ASSERT_EQ(got.size(), expected.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
      EXPECT_EQ(got[k].clause_id, std::get<1>(expected[k]));
      EXPECT_EQ(got[k].current_pos, std::get<2>(expected[k]));
      EXPECT_EQ(got[k].complement_pos, std::get<3>(expected[k]));
    }
  }
}

TEST(NextCandidate, SingleCandidateLeavesStackAlone) {
  ProofState st;
  st.index = build_index(dave());
  st.current = clause_of("Nice(Dave, False)");
  auto c = next_candidate(st);
  ASSERT_TRUE(c);
  EXPECT_TRUE(st.backups.empty());
  EXPECT_EQ(st.last_list_size, 1u);
}

TEST(NextCandidate, SeveralCandidatesStashTheRest) {
  ProofState st;
  st.index = build_index(clauses_of({"P(Anne, True)", "P(x, True) ∨ Q(x, True)", "P(Anne, True) ∨ R(Anne, True)"}));
  st.current = clause_of("P(Anne, False)");
  auto c = next_candidate(st);
  ASSERT_TRUE(c);
  EXPECT_EQ(render_clause(*c->clause), "P(Anne, True)");
  ASSERT_EQ(st.backups.size(), 1u);
  EXPECT_EQ(st.backups.top().remaining.size(), 2u);
  EXPECT_EQ(st.backups.top().snapshot.current, st.current);
}

TEST(NextCandidate, NoCandidatesAndEmptyStackExhausts) {
  ProofState st;
  st.index = build_index(dave());
  st.current = clause_of("Nice(Dave, True)");
  EXPECT_FALSE(next_candidate(st));
}

TEST(NextCandidate, DeadEndRestoresNewestBackup) {
  ProofState st;
  st.index = build_index(clauses_of({"P(Anne, True)", "P(x, True) ∨ Q(x, True)"}));
  Clause start = clause_of("P(Anne, False)");
  st.current = start;
  ASSERT_TRUE(next_candidate(st));
  st.current = clause_of("Q(Anne, True)");
  st.depth = 1;
  st.dead_end = true;
  auto c = next_candidate(st);
  ASSERT_TRUE(c);
  EXPECT_TRUE(st.resumed);
  EXPECT_EQ(st.current, start);
  EXPECT_EQ(st.depth, 0u);
  EXPECT_EQ(render_clause(*c->clause), "P(x, True) ∨ Q(x, True)");
  EXPECT_EQ(st.backtracks, 1u);
}

TEST(VisitedSet, ModuloRenaming) {
  VisitedSet v;
  EXPECT_TRUE(v.insert(clause_of("P(x, True) ∨ Q(x, False)")));
  EXPECT_FALSE(v.insert(clause_of("Q(y, False) ∨ P(y, True)")));
  EXPECT_TRUE(v.contains(clause_of("P(z, True) ∨ Q(z, False)")));
  EXPECT_FALSE(v.contains(clause_of("P(z, True) ∨ Q(w, False)")));
  EXPECT_EQ(v.size(), 1u);
}
