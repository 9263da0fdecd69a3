#include "refute/trace.hpp"

#include "refute/parser.hpp"

namespace refute {

using nlohmann::ordered_json;

ordered_json step_to_json(const StepRecord& s) {
  ordered_json j;
  j["step"] = s.step;
  j["current"] = render_clause(s.current);
  j["complement"] = render_clause(s.complement);
  j["complement_origin"] = render_origin(s.complement.origin());
  j["pivot_current"] = render_literal(s.current[s.current_pivot]);
  j["pivot_complement"] = render_literal(s.complement[s.complement_pivot]);
  ordered_json mgu = ordered_json::object();
  for (const auto& [var, term] : s.mgu) mgu[var] = render_term(term);
  j["mgu"] = std::move(mgu);
  j["outcome"] = std::string(to_string(s.outcome));
  j["resolvent"] = render_clause(s.resolvent);
  j["candidates"] = s.candidates;
  j["backtracked"] = s.backtracked;
  j["revisited"] = s.revisited;
  return j;
}

ordered_json path_to_json(const PathResult& p, TraceLevel level) {
  ordered_json j;
  j["path"] = std::string(to_string(p.path));
  j["start"] = render_clause(p.start);
  j["determination"] = p.determination.entails ? "entails" : "not_entails";
  j["stop"] = std::string(to_string(p.stop));
  if (p.stop == StopReason::Exhausted) {
    j["note"] = p.trace.empty() ? "No complementary clause was found. No contradiction found."
                                : "No contradiction found.";
  }
  j["iterations"] = p.iterations();
  j["candidates_examined"] = p.candidates_examined;
  j["backtracks"] = p.backtracks;
  j["derived"] = p.derived;
  if (level == TraceLevel::Full) {
    ordered_json steps = ordered_json::array();
    for (const StepRecord& s : p.trace) steps.push_back(step_to_json(s));
    j["steps"] = std::move(steps);
  }
  return j;
}

namespace {

ordered_json clauses_json(const std::vector<Clause>& cs) {
  ordered_json a = ordered_json::array();
  for (const Clause& c : cs) {
    a.push_back({{"clause", render_clause(c)}, {"origin", render_origin(c.origin())}});
  }
  return a;
}

ordered_json steps_json(const DecomposeSteps& s) {
  ordered_json j;
  j["nnf"] = render(s.nnf);
  j["skolemized"] = render(s.skolemized);
  j["clauses"] = clauses_json(s.clauses);
  return j;
}

}  // namespace

ordered_json decomposition_to_json(const Decomposition& d) {
  ordered_json j;
  ordered_json premises = ordered_json::array();
  for (const DecomposeSteps& s : d.premise_steps) premises.push_back(steps_json(s));
  j["premises"] = std::move(premises);
  j["query"] = steps_json(d.query_steps);
  j["p_n"] = clauses_json(d.premises);
  j["s_n"] = render_clause(d.query);
  j["neg_s_n"] = render_clause(d.negated_query);
  return j;
}

ordered_json verdict_to_json(const Verdict& v, const VerdictJsonOptions& opts) {
  ordered_json j;
  j["schema"] = kVerdictSchema;
  j["id"] = v.id;
  j["answer"] = std::string(to_string(v.answer));
  j["d_s"] = v.d_s.entails ? "P ⊢ ¬S" : "P ⊬ ¬S";
  j["d_neg_s"] = v.d_neg_s.entails ? "P ⊢ S" : "P ⊬ S";
  j["paths"] = ordered_json::array({path_to_json(v.from_s, opts.trace_level),
                                    path_to_json(v.from_neg_s, opts.trace_level)});
  ordered_json stats;
  stats["iterations"] = v.stats.iterations;
  stats["candidates_examined"] = v.stats.candidates_examined;
  stats["backtracks"] = v.stats.backtracks;
  stats["i_max_hit"] = v.stats.i_max_hit;
  stats["blowup"] = v.stats.blowup;
  if (opts.include_timing) stats["wall_time_us"] = v.stats.wall_time_us;
  j["stats"] = std::move(stats);
  if (opts.explain && v.decomposition) j["decomposition"] = decomposition_to_json(*v.decomposition);
  return j;
}

}  // namespace refute
