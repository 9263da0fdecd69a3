#include "refute/engine.hpp"

#include <chrono>

namespace refute {

void EngineConfig::validate() const {
  if (i_max < 1) throw ConfigError("i_max must be at least 1");
  if (clause_cap < 1) throw ConfigError("clause cap must be at least 1");
  if (backtrack_limit < 1) throw ConfigError("backtrack limit must be at least 1");
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::Contradiction: return "contradiction";
    case StopReason::Exhausted: return "exhausted";
    case StopReason::IMaxHit: return "i_max_hit";
    case StopReason::BacktrackLimit: return "backtrack_limit";
    case StopReason::Blowup: return "blowup";
  }
  return "?";
}

PathResult prove_path(const std::vector<Clause>& premises, const Clause& start, PathKind path,
                      const EngineConfig& cfg) {
  cfg.validate();
  ProofState st;
  st.path = path;
  st.current = start;
  st.current.set_origin(path == PathKind::FromS ? Origin::query() : Origin::negated_query());
  st.index = build_index(premises);
  st.index.add(st.current);
  st.visited.insert(st.current);

  PathResult out;
  out.path = path;
  out.start = st.current;
  out.determination = Determination{false, path};

  for (;;) {
    if (st.iteration >= cfg.i_max) {
      out.stop = StopReason::IMaxHit;
      break;
    }
    std::optional<Candidate> cand = next_candidate(st);
    if (!cand) {
      out.stop = StopReason::Exhausted;
      break;
    }
    if (st.resumed && st.backtracks > cfg.backtrack_limit) {
      out.stop = StopReason::BacktrackLimit;
      break;
    }

    ResolveOutcome res = resolve(st.current, cand->current_pos, *cand->clause, cand->complement_pos);
    ++st.iteration;

    StepRecord rec;
    rec.step = st.iteration;
    rec.current = st.current;
    rec.complement = *cand->clause;
    rec.current_pivot = cand->current_pos;
    rec.complement_pivot = cand->complement_pos;
    rec.mgu = res.mgu;
    rec.outcome = res.kind;
    rec.resolvent = res.clause;
    rec.candidates = st.last_list_size;
    rec.backtracked = st.resumed;

    if (res.kind == ResolveOutcome::Kind::Contradiction) {
      st.trace.push_back(std::move(rec));
      out.stop = StopReason::Contradiction;
      out.determination.entails = true;
      break;
    }
    if (res.kind == ResolveOutcome::Kind::Tautology) {
      st.dead_end = true;
    } else if (!st.visited.insert(res.clause)) {
      rec.revisited = true;
      st.dead_end = true;
    } else {
      if (++out.derived > cfg.clause_cap) {
        st.trace.push_back(std::move(rec));
        out.stop = StopReason::Blowup;
        break;
      }
      Clause derived = res.clause;
      derived.set_origin(Origin::derived(st.iteration));
      rec.resolvent = derived;
      st.index.add(derived);
      st.current = std::move(derived);
      ++st.depth;
    }
    st.trace.push_back(std::move(rec));
  }

  out.trace = std::move(st.trace);
  out.candidates_examined = st.candidates_examined;
  out.backtracks = st.backtracks;
  return out;
}

Answer classify(const Determination& d_s, const Determination& d_neg_s) {
  if (d_s.path != PathKind::FromS || d_neg_s.path != PathKind::FromNegS)
    throw std::invalid_argument("classify: determinations passed in the wrong order");
  const bool proves_s = d_neg_s.entails;
  const bool proves_not_s = d_s.entails;
  if (proves_s && !proves_not_s) return Answer::True;
  if (!proves_s && proves_not_s) return Answer::False;
  if (!proves_s && !proves_not_s) return Answer::Unknown;
  return Answer::SelfContradictory;
}

Verdict solve(const Decomposition& problem, const EngineConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  v.from_s = prove_path(problem.premises, problem.query, PathKind::FromS, cfg);
  v.from_neg_s = prove_path(problem.premises, problem.negated_query, PathKind::FromNegS, cfg);
  v.d_s = v.from_s.determination;
  v.d_neg_s = v.from_neg_s.determination;
  v.answer = classify(v.d_s, v.d_neg_s);
  for (const PathResult* p : {&v.from_s, &v.from_neg_s}) {
    v.stats.iterations += p->iterations();
    v.stats.candidates_examined += p->candidates_examined;
    v.stats.backtracks += p->backtracks;
    v.stats.i_max_hit = v.stats.i_max_hit || p->stop == StopReason::IMaxHit;
    v.stats.blowup = v.stats.blowup || p->stop == StopReason::Blowup;
  }
  v.stats.wall_time_us = std::chrono::duration_cast<std::chrono::microseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
  return v;
}

Verdict solve(const std::vector<Formula>& premises, const Formula& query, const EngineConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  Decomposition d = decompose(premises, query, cfg.clause_cap);
  Verdict v = solve(d, cfg);
  v.decomposition = std::move(d);
  v.stats.wall_time_us = std::chrono::duration_cast<std::chrono::microseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
  return v;
}

}  // namespace refute
