#pragma once

#include "json.hpp"
#include "refute/decomposer.hpp"
#include "refute/engine.hpp"

namespace refute {

inline constexpr const char* kVerdictSchema = "refute.verdict/1";

struct VerdictJsonOptions {
  bool include_timing = true;  // wall_time_us; off for golden comparisons
  bool explain = false;        // adds the intermediate decomposition forms
  TraceLevel trace_level = TraceLevel::Full;
};

nlohmann::ordered_json step_to_json(const StepRecord& s);
nlohmann::ordered_json path_to_json(const PathResult& p, TraceLevel level);
nlohmann::ordered_json decomposition_to_json(const Decomposition& d);
nlohmann::ordered_json verdict_to_json(const Verdict& v, const VerdictJsonOptions& opts = {});

}  // namespace refute
