#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "refute/ast.hpp"
#include "refute/decomposer.hpp"
#include "refute/search.hpp"

namespace refute {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class TraceLevel { Summary, Full };

struct EngineConfig {
  std::size_t i_max = 20;                      // resolve calls per path
  std::size_t clause_cap = kDefaultClauseCap;  // CNF size and derived clauses per path
  std::size_t backtrack_limit = 100;
  TraceLevel trace_level = TraceLevel::Full;   // Summary drops step arrays from JSON

  // Throws ConfigError when i_max, clause_cap or backtrack_limit is zero.
  void validate() const;
};

// Why a path stopped.
enum class StopReason { Contradiction, Exhausted, IMaxHit, BacktrackLimit, Blowup };

std::string_view to_string(StopReason r);

struct PathResult {
  PathKind path = PathKind::FromS;
  Clause start;
  Determination determination;
  StopReason stop = StopReason::Exhausted;
  std::vector<StepRecord> trace;
  std::size_t candidates_examined = 0;
  std::size_t backtracks = 0;
  std::size_t derived = 0;  // resolvents appended to the path's index

  std::size_t iterations() const { return trace.size(); }
};

// Linear search-and-resolve from one unit clause against a private copy of
// P_n. Entails iff the empty clause is derived.
PathResult prove_path(const std::vector<Clause>& premises, const Clause& start, PathKind path,
                      const EngineConfig& cfg);

// d_s is the FromS determination (a claim about P ⊢ ¬S), d_neg_s the FromNegS
// one (a claim about P ⊢ S).
Answer classify(const Determination& d_s, const Determination& d_neg_s);

struct VerdictStats {
  std::size_t iterations = 0;
  std::size_t candidates_examined = 0;
  std::size_t backtracks = 0;
  bool i_max_hit = false;
  bool blowup = false;
  long long wall_time_us = 0;
};

struct Verdict {
  std::string id;
  Answer answer = Answer::Unknown;
  Determination d_s;
  Determination d_neg_s;
  PathResult from_s;
  PathResult from_neg_s;
  VerdictStats stats;
  std::optional<Decomposition> decomposition;  // kept when explain is requested
};

Verdict solve(const Decomposition& problem, const EngineConfig& cfg);

// Decomposes, then runs both paths. Propagates NonAtomicQuery and ClauseBlowup.
Verdict solve(const std::vector<Formula>& premises, const Formula& query, const EngineConfig& cfg);

}  // namespace refute
