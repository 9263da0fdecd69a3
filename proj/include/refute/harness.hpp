#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "refute/ast.hpp"
#include "refute/engine.hpp"
#include "refute/translator.hpp"

namespace refute {

inline constexpr const char* kProblemSchema = "refute.problem/1";
inline constexpr const char* kReportSchema = "refute.report/1";

// One benchmark item. Symbolic problems carry grammar text; natural-language
// ones (nl = true) carry sentences that go through a translator at run time.
struct Problem {
  std::string id;
  std::vector<std::string> premises;
  std::string query;
  Answer label = Answer::Unknown;
  bool nl = false;
  std::optional<Dialect> dialect;
  std::optional<int> depth;
  std::string dataset;
};

class LoadError : public std::runtime_error {
 public:
  LoadError(std::size_t line, const std::string& what);

  std::size_t line() const { return line_; }  // 1-based

 private:
  std::size_t line_;
};

Problem problem_from_json(const nlohmann::json& j);  // throws std::invalid_argument
nlohmann::ordered_json problem_to_json(const Problem& p);

std::vector<Problem> parse_problems_jsonl(std::string_view text);
std::vector<Problem> load_problems(const std::string& path);
void write_problems_jsonl(const std::vector<Problem>& problems, std::ostream& out);

struct BenchConfig {
  EngineConfig engine;
  unsigned jobs = 1;
  bool oracle = true;  // cross-check every function-free problem
  std::optional<RemoteTranslatorEndpoint> remote;
  unsigned remote_concurrency = 4;  // in-flight remote calls
  std::optional<std::string> trace_dir;
};

enum class RecordStatus { Solved, TranslationFailure, ParseFailure, DecomposeFailure };

std::string_view to_string(RecordStatus s);

struct ProblemRecord {
  std::string id;
  RecordStatus status = RecordStatus::Solved;
  std::string error;  // set when status != Solved
  Answer gold = Answer::Unknown;
  std::optional<Answer> answer;
  bool match = false;
  std::size_t steps = 0;  // resolve calls over both paths
  std::size_t backtracks = 0;
  bool i_max_hit = false;
  std::optional<std::string> unknown_cause;  // engine Unknown only
  std::optional<Answer> oracle;
  bool oracle_exempt = false;
  bool soundness_violation = false;
  std::optional<int> depth;
  std::string dataset;
  long long wall_time_us = 0;
};

struct LabelStats {
  std::size_t count = 0;
  std::size_t matches = 0;
};

struct Report {
  std::vector<ProblemRecord> records;  // sorted by id
  std::size_t total = 0;
  std::size_t scored = 0;  // solved records; the accuracy denominator
  std::size_t matches = 0;
  double accuracy = 0;
  LabelStats per_label[4];  // indexed by Answer
  double mean_steps = 0;
  std::size_t i_max_hits = 0;
  double insufficient_iteration_rate = 0;  // i_max_hits / scored
  std::size_t translation_failures = 0;
  std::size_t parse_failures = 0;
  std::size_t decompose_failures = 0;
  std::size_t oracle_checked = 0;
  std::size_t oracle_agree = 0;
  std::size_t oracle_exempt = 0;
  std::size_t soundness_violations = 0;
  std::size_t incomplete = 0;  // engine Unknown where the oracle decided
  BenchConfig config;
  long long wall_time_us = 0;
};

ProblemRecord run_problem(const Problem& p, const BenchConfig& cfg);
Report run_benchmark(const std::vector<Problem>& problems, const BenchConfig& cfg);

// Recomputes every aggregate from the records.
void aggregate(Report& r);

// Fields ending in wall_time_us are dropped unless include_timing is set.
nlohmann::ordered_json report_to_json(const Report& r, bool include_timing = true);
std::string report_table(const Report& r);

struct SuiteParams {
  std::size_t count = 100;
  std::size_t constants = 3;
  std::size_t predicates = 5;
  std::size_t clauses = 10;  // premises per problem
  int depth = 0;             // 0 draws a depth in 1..4 per problem
};

// Random function-free problems: a derivation chain of the requested depth
// from one fact, padded with distractor premises. Labels come from the oracle.
std::vector<Problem> generate_suite(std::uint64_t seed, const SuiteParams& params);

}  // namespace refute
