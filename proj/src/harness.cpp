#include "refute/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <semaphore>
#include <sstream>
#include <thread>

#include "refute/decomposer.hpp"
#include "refute/oracle.hpp"
#include "refute/parser.hpp"
#include "refute/trace.hpp"

namespace refute {

using nlohmann::json;
using nlohmann::ordered_json;

LoadError::LoadError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

// {{{ Problems

Problem problem_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("expected a JSON object");
  auto need = [&](const char* key) -> const json& {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
    return j.at(key);
  };
  Problem p;
  const json& id = need("id");
  if (!id.is_string()) throw std::invalid_argument("'id' must be a string");
  p.id = id.get<std::string>();
  const json& premises = need("premises");
  if (!premises.is_array()) throw std::invalid_argument("'premises' must be an array of strings");
  for (const json& e : premises) {
    if (!e.is_string()) throw std::invalid_argument("'premises' must be an array of strings");
    p.premises.push_back(e.get<std::string>());
  }
  const json& query = need("query");
  if (!query.is_string()) throw std::invalid_argument("'query' must be a string");
  p.query = query.get<std::string>();
  const json& label = need("label");
  if (!label.is_string()) throw std::invalid_argument("'label' must be a string");
  auto answer = parse_answer(label.get<std::string>());
  if (!answer) throw std::invalid_argument("unknown label '" + label.get<std::string>() + "'");
  p.label = *answer;
  if (j.contains("dialect")) {
    auto d = j.at("dialect").is_string() ? parse_dialect(j.at("dialect").get<std::string>()) : std::nullopt;
    if (!d) throw std::invalid_argument("unknown dialect");
    p.dialect = d;
  }
  if (j.contains("nl")) {
    if (!j.at("nl").is_boolean()) throw std::invalid_argument("'nl' must be a boolean");
    p.nl = j.at("nl").get<bool>();
  } else {
    p.nl = p.dialect.has_value();
  }
  if (j.contains("depth")) {
    if (!j.at("depth").is_number_integer()) throw std::invalid_argument("'depth' must be an integer");
    p.depth = j.at("depth").get<int>();
  }
  if (j.contains("dataset")) {
    if (!j.at("dataset").is_string()) throw std::invalid_argument("'dataset' must be a string");
    p.dataset = j.at("dataset").get<std::string>();
  }
  return p;
}

ordered_json problem_to_json(const Problem& p) {
  ordered_json j;
  j["id"] = p.id;
  j["premises"] = p.premises;
  j["query"] = p.query;
  j["label"] = std::string(to_string(p.label));
  if (p.nl) j["nl"] = true;
  if (p.dialect) j["dialect"] = std::string(to_string(*p.dialect));
  if (p.depth) j["depth"] = *p.depth;
  if (!p.dataset.empty()) j["dataset"] = p.dataset;
  return j;
}

std::vector<Problem> parse_problems_jsonl(std::string_view text) {
  std::vector<Problem> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      out.push_back(problem_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw LoadError(line_no, e.what());
    } catch (const std::invalid_argument& e) {
      throw LoadError(line_no, e.what());
    }
  }
  return out;
}

std::vector<Problem> load_problems(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(0, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problems_jsonl(ss.str());
}

void write_problems_jsonl(const std::vector<Problem>& problems, std::ostream& out) {
  for (const Problem& p : problems) out << problem_to_json(p).dump() << '\n';
}

// }}}

// {{{ Benchmark

std::string_view to_string(RecordStatus s) {
  switch (s) {
    case RecordStatus::Solved: return "solved";
    case RecordStatus::TranslationFailure: return "translation_failure";
    case RecordStatus::ParseFailure: return "parse_failure";
    case RecordStatus::DecomposeFailure: return "decompose_failure";
  }
  return "?";
}

namespace {

using Semaphore = std::counting_semaphore<1024>;

std::string unknown_cause(const Verdict& v) {
  for (StopReason r : {StopReason::IMaxHit, StopReason::BacktrackLimit, StopReason::Blowup})
    if (v.from_s.stop == r || v.from_neg_s.stop == r) return std::string(to_string(r));
  return "exhausted";
}

std::string file_safe(const std::string& id) {
  std::string out;
  for (char c : id) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') ? c : '_';
  return out.empty() ? "_" : out;
}

ProblemRecord run_one(const Problem& p, const BenchConfig& cfg, Semaphore* remote_slots) {
  const auto t0 = std::chrono::steady_clock::now();
  ProblemRecord rec;
  rec.id = p.id;
  rec.gold = p.label;
  rec.depth = p.depth;
  rec.dataset = p.dataset;
  auto finish = [&] {
    rec.wall_time_us =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count();
    return rec;
  };

  std::vector<Formula> premises;
  Formula query;
  if (p.nl) {
    try {
      if (p.dialect) {
        std::vector<std::string> sentences = p.premises;
        sentences.push_back(p.query);
        TranslatedProblem t = translate_templated(sentences, *p.dialect);
        premises = std::move(t.premises);
        query = std::move(t.query);
      } else if (cfg.remote) {
        if (remote_slots) remote_slots->acquire();
        try {
          TranslatedProblem t = translate_remote(p.premises, p.query, *cfg.remote);
          if (remote_slots) remote_slots->release();
          premises = std::move(t.premises);
          query = std::move(t.query);
        } catch (...) {
          if (remote_slots) remote_slots->release();
          throw;
        }
      } else {
        throw std::runtime_error("natural-language problem without a dialect or translator endpoint");
      }
    } catch (const std::exception& e) {
      rec.status = RecordStatus::TranslationFailure;
      rec.error = e.what();
      return finish();
    }
  } else {
    ProblemSource src;
    src.id = p.id;
    for (const std::string& s : p.premises) src.premises.push_back(split_gloss(s));
    src.query = p.query;
    try {
      ParsedProblem parsed = parse_problem(src);
      premises = std::move(parsed.premises);
      query = std::move(parsed.query);
    } catch (const std::exception& e) {
      rec.status = RecordStatus::ParseFailure;
      rec.error = e.what();
      return finish();
    }
  }

  Decomposition d;
  try {
    d = decompose(premises, query, cfg.engine.clause_cap);
  } catch (const std::exception& e) {
    rec.status = RecordStatus::DecomposeFailure;
    rec.error = e.what();
    return finish();
  }

  Verdict v = solve(d, cfg.engine);
  v.id = p.id;
  rec.answer = v.answer;
  rec.match = v.answer == p.label;
  rec.steps = v.stats.iterations;
  rec.backtracks = v.stats.backtracks;
  rec.i_max_hit = v.stats.i_max_hit;
  if (v.answer == Answer::Unknown) rec.unknown_cause = unknown_cause(v);

  if (cfg.oracle) {
    if (oracle_exempt(d)) {
      rec.oracle_exempt = true;
    } else {
      try {
        rec.oracle = oracle_answer(d);
        rec.soundness_violation = v.answer != Answer::Unknown && v.answer != *rec.oracle;
      } catch (const AtomCapExceeded&) {
        rec.oracle_exempt = true;
      }
    }
  }

  if (cfg.trace_dir) {
    VerdictJsonOptions opts;
    opts.include_timing = false;
    std::ofstream out(std::filesystem::path(*cfg.trace_dir) / (file_safe(p.id) + ".json"));
    out << verdict_to_json(v, opts).dump(2) << '\n';
  }
  return finish();
}

}  // namespace

ProblemRecord run_problem(const Problem& p, const BenchConfig& cfg) {
  cfg.engine.validate();
  return run_one(p, cfg, nullptr);
}

Report run_benchmark(const std::vector<Problem>& problems, const BenchConfig& cfg) {
  cfg.engine.validate();
  if (cfg.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (cfg.remote_concurrency < 1 || cfg.remote_concurrency > 1024)
    throw ConfigError("remote concurrency must be in 1..1024");
  if (cfg.trace_dir) std::filesystem::create_directories(*cfg.trace_dir);

  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.config = cfg;
  r.records.resize(problems.size());
  Semaphore slots(static_cast<std::ptrdiff_t>(cfg.remote_concurrency));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < problems.size(); i = next++) r.records[i] = run_one(problems[i], cfg, &slots);
  };
  const unsigned n = std::min<std::size_t>(cfg.jobs, std::max<std::size_t>(problems.size(), 1));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  std::stable_sort(r.records.begin(), r.records.end(),
                   [](const ProblemRecord& a, const ProblemRecord& b) { return a.id < b.id; });
  aggregate(r);
  r.wall_time_us =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

void aggregate(Report& r) {
  const BenchConfig cfg = r.config;
  std::vector<ProblemRecord> records = std::move(r.records);
  const long long wall = r.wall_time_us;
  r = Report{};
  r.config = cfg;
  r.wall_time_us = wall;
  r.records = std::move(records);
  r.total = r.records.size();
  std::size_t steps = 0;
  for (const ProblemRecord& rec : r.records) {
    switch (rec.status) {
      case RecordStatus::TranslationFailure: ++r.translation_failures; continue;
      case RecordStatus::ParseFailure: ++r.parse_failures; continue;
      case RecordStatus::DecomposeFailure: ++r.decompose_failures; continue;
      case RecordStatus::Solved: break;
    }
    ++r.scored;
    steps += rec.steps;
    LabelStats& ls = r.per_label[static_cast<int>(rec.gold)];
    ++ls.count;
    if (rec.match) {
      ++r.matches;
      ++ls.matches;
    }
    if (rec.i_max_hit) ++r.i_max_hits;
    if (rec.oracle_exempt) ++r.oracle_exempt;
    if (rec.oracle) {
      ++r.oracle_checked;
      if (rec.answer == rec.oracle) ++r.oracle_agree;
      if (rec.soundness_violation) ++r.soundness_violations;
      if (rec.answer == Answer::Unknown && *rec.oracle != Answer::Unknown) ++r.incomplete;
    }
  }
  if (r.scored) {
    r.accuracy = static_cast<double>(r.matches) / static_cast<double>(r.scored);
    r.mean_steps = static_cast<double>(steps) / static_cast<double>(r.scored);
    r.insufficient_iteration_rate = static_cast<double>(r.i_max_hits) / static_cast<double>(r.scored);
  }
}

namespace {

double ratio(std::size_t a, std::size_t b) { return b ? static_cast<double>(a) / static_cast<double>(b) : 0.0; }

ordered_json record_json(const ProblemRecord& rec, bool include_timing) {
  ordered_json j;
  j["id"] = rec.id;
  j["status"] = std::string(to_string(rec.status));
  if (!rec.error.empty()) j["error"] = rec.error;
  j["gold"] = std::string(to_string(rec.gold));
  j["answer"] = rec.answer ? ordered_json(std::string(to_string(*rec.answer))) : ordered_json(nullptr);
  j["match"] = rec.match;
  j["steps"] = rec.steps;
  j["backtracks"] = rec.backtracks;
  j["i_max_hit"] = rec.i_max_hit;
  if (rec.unknown_cause) j["unknown_cause"] = *rec.unknown_cause;
  if (rec.oracle) j["oracle"] = std::string(to_string(*rec.oracle));
  if (rec.oracle_exempt) j["oracle"] = "exempt";
  if (rec.soundness_violation) j["soundness_violation"] = true;
  if (rec.depth) j["depth"] = *rec.depth;
  if (!rec.dataset.empty()) j["dataset"] = rec.dataset;
  if (include_timing) j["wall_time_us"] = rec.wall_time_us;
  return j;
}

}  // namespace

ordered_json report_to_json(const Report& r, bool include_timing) {
  ordered_json j;
  j["schema"] = kReportSchema;
  ordered_json cfg;
  cfg["i_max"] = r.config.engine.i_max;
  cfg["clause_cap"] = r.config.engine.clause_cap;
  cfg["backtrack_limit"] = r.config.engine.backtrack_limit;
  cfg["jobs"] = r.config.jobs;
  cfg["oracle"] = r.config.oracle;
  if (r.config.remote) {
    cfg["translator_url"] = r.config.remote->base_url;
    cfg["translator_timeout_ms"] = r.config.remote->timeout.count();
  }
  j["config"] = std::move(cfg);

  ordered_json s;
  s["total"] = r.total;
  s["scored"] = r.scored;
  s["matches"] = r.matches;
  s["accuracy"] = r.accuracy;
  ordered_json per = ordered_json::object();
  for (Answer a : {Answer::True, Answer::False, Answer::Unknown, Answer::SelfContradictory}) {
    const LabelStats& ls = r.per_label[static_cast<int>(a)];
    if (!ls.count) continue;
    per[std::string(to_string(a))] = {{"count", ls.count}, {"matches", ls.matches}, {"accuracy", ratio(ls.matches, ls.count)}};
  }
  s["per_label"] = std::move(per);
  s["mean_steps"] = r.mean_steps;
  s["i_max_hits"] = r.i_max_hits;
  s["insufficient_iteration_rate"] = r.insufficient_iteration_rate;
  s["translation_failures"] = r.translation_failures;
  s["parse_failures"] = r.parse_failures;
  s["decompose_failures"] = r.decompose_failures;
  s["oracle"] = {{"checked", r.oracle_checked},
                 {"agree", r.oracle_agree},
                 {"agreement", ratio(r.oracle_agree, r.oracle_checked)},
                 {"exempt", r.oracle_exempt},
                 {"soundness_violations", r.soundness_violations},
                 {"incomplete", r.incomplete}};
  if (include_timing) s["wall_time_us"] = r.wall_time_us;
  j["summary"] = std::move(s);

  ordered_json recs = ordered_json::array();
  for (const ProblemRecord& rec : r.records) recs.push_back(record_json(rec, include_timing));
  j["records"] = std::move(recs);
  return j;
}

std::string report_table(const Report& r) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(2);
  o << "problems            " << r.total << '\n';
  o << "scored              " << r.scored << '\n';
  o << "accuracy            " << 100 * r.accuracy << "% (" << r.matches << '/' << r.scored << ")\n";
  for (Answer a : {Answer::True, Answer::False, Answer::Unknown, Answer::SelfContradictory}) {
    const LabelStats& ls = r.per_label[static_cast<int>(a)];
    if (!ls.count) continue;
    o << "  " << std::left << std::setw(18) << to_string(a) << std::right << 100 * ratio(ls.matches, ls.count)
      << "% (" << ls.matches << '/' << ls.count << ")\n";
  }
  o << "mean steps          " << r.mean_steps << '\n';
  o << "insufficient iter.  " << 100 * r.insufficient_iteration_rate << "% (" << r.i_max_hits << ")\n";
  o << "translation fails   " << r.translation_failures << '\n';
  o << "parse fails         " << r.parse_failures << '\n';
  o << "decompose fails     " << r.decompose_failures << '\n';
  o << "oracle agreement    " << 100 * ratio(r.oracle_agree, r.oracle_checked) << "% (" << r.oracle_agree << '/'
    << r.oracle_checked << ", exempt " << r.oracle_exempt << ")\n";
  o << "soundness violations " << r.soundness_violations << '\n';
  o << "incomplete          " << r.incomplete << '\n';
  return o.str();
}

// }}}

// {{{ Suite generation

namespace {

const std::vector<std::string> kConstantPool{"Anne", "Bob",   "Charlie", "Dave",  "Erin",
                                             "Fiona", "Gary", "Harry",   "Ivy",   "Jack"};
const std::vector<std::string> kPredicatePool{"Red",   "Blue",  "Green", "Round", "Big",   "Kind",
                                              "Nice",  "Quiet", "Smart", "Young", "Cold",  "Rough",
                                              "Furry", "White", "Sad",   "Tall"};

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

  template <class T>
  std::vector<T> sample(const std::vector<T>& pool, std::size_t k) {
    std::vector<T> v = pool;
    for (std::size_t i = 0; i < k && i < v.size(); ++i) std::swap(v[i], v[i + below(v.size() - i)]);
    v.resize(std::min(k, v.size()));
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

std::string lit(const std::string& pred, const std::string& arg, bool positive) {
  return pred + "(" + arg + ", " + (positive ? "True" : "False") + ")";
}

}  // namespace

std::vector<Problem> generate_suite(std::uint64_t seed, const SuiteParams& params) {
  if (params.constants < 1 || params.constants > kConstantPool.size())
    throw ConfigError("constants must be in 1.." + std::to_string(kConstantPool.size()));
  if (params.predicates < 1 || params.predicates > kPredicatePool.size())
    throw ConfigError("predicates must be in 1.." + std::to_string(kPredicatePool.size()));
  if (params.clauses < 1) throw ConfigError("clauses must be at least 1");
  if (params.constants * params.predicates > kDefaultAtomCap)
    throw ConfigError("constants x predicates exceeds the oracle atom cap");

  Draw draw(seed);
  std::vector<Problem> out;
  const int width = std::max<int>(4, static_cast<int>(std::to_string(params.count).size()));
  for (std::size_t i = 0; i < params.count; ++i) {
    const std::vector<std::string> consts = draw.sample(kConstantPool, params.constants);
    const std::vector<std::string> preds = draw.sample(kPredicatePool, params.predicates);
    const int want = params.depth > 0 ? params.depth : 1 + static_cast<int>(draw.below(4));
    const std::size_t depth = std::min<std::size_t>({static_cast<std::size_t>(want), preds.size() - 1, params.clauses - 1});

    Problem p;
    std::ostringstream id;
    id << "s" << seed << "-" << std::setw(width) << std::setfill('0') << i + 1;
    p.id = id.str();
    p.dataset = "generated";
    p.depth = static_cast<int>(depth);

    const std::string& subject = consts[0];
    std::vector<bool> sign(depth + 1);
    for (std::size_t k = 0; k <= depth; ++k) sign[k] = !draw.chance(1, 4);
    p.premises.push_back(lit(preds[0], subject, sign[0]));
    for (std::size_t k = 1; k <= depth; ++k)
      p.premises.push_back("∀x (" + lit(preds[k - 1], "x", sign[k - 1]) + " → " + lit(preds[k], "x", sign[k]) + ")");

    auto any_pred = [&] { return preds[draw.below(preds.size())]; };
    auto any_const = [&] { return consts[draw.below(consts.size())]; };
    auto any_sign = [&] { return !draw.chance(1, 3); };
    auto distractor = [&]() -> std::string {
      const std::size_t kind = draw.below(10);
      if (kind < 4) return lit(any_pred(), any_const(), any_sign());
      if (kind < 7)
        return "∀x (" + lit(any_pred(), "x", any_sign()) + " → " + lit(any_pred(), "x", any_sign()) + ")";
      if (kind < 8)
        return "∀x (" + lit(any_pred(), "x", any_sign()) + " ∧ " + lit(any_pred(), "x", any_sign()) + " → " +
               lit(any_pred(), "x", any_sign()) + ")";
      const std::string c = any_const();
      if (kind < 9) return lit(any_pred(), c, any_sign()) + " ∨ " + lit(any_pred(), c, any_sign());
      return lit(any_pred(), c, true) + " ⊕ " + lit(any_pred(), c, true);
    };
    switch (draw.below(3)) {
      case 0: p.query = lit(preds[depth], subject, sign[depth]); break;
      case 1: p.query = lit(preds[depth], subject, !sign[depth]); break;
      default:
        if (preds.size() > depth + 1) {
          p.query = lit(preds[depth + 1 + draw.below(preds.size() - depth - 1)], any_const(), any_sign());
        } else if (consts.size() > 1) {
          p.query = lit(preds[depth], consts[1 + draw.below(consts.size() - 1)], any_sign());
        } else {
          p.query = lit(preds[depth], subject, any_sign());
        }
    }

    // Distractors are redrawn when they would make the premises inconsistent
    // or change the answer, so the chain alone decides the label and the
    // depth stays meaningful.
    std::vector<Formula> parsed;
    for (const std::string& s : p.premises) parsed.push_back(parse_formula(s));
    const Formula query = parse_formula(p.query);
    const Answer chain_answer = oracle_answer(decompose(parsed, query));
    for (std::size_t tries = 0; p.premises.size() < params.clauses && tries < 16 * params.clauses; ++tries) {
      std::string text = distractor();
      parsed.push_back(parse_formula(text));
      const Decomposition d = decompose(parsed, query);
      if (satisfiable(d.premises, collect_constants(d.premises)) && oracle_answer(d) == chain_answer) {
        p.premises.push_back(std::move(text));
      } else {
        parsed.pop_back();
      }
    }

    std::vector<Formula> premises;
    for (const std::string& s : p.premises) premises.push_back(parse_formula(s));
    const Decomposition d = decompose(premises, parse_formula(p.query));
    p.label = oracle_answer(d);
    out.push_back(std::move(p));
  }
  return out;
}

// }}}

}  // namespace refute
