#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "refute/decomposer.hpp"
#include "refute/engine.hpp"
#include "refute/harness.hpp"
#include "refute/oracle.hpp"
#include "refute/parser.hpp"
#include "refute/trace.hpp"
#include "refute/translator.hpp"

namespace {

using namespace refute;

enum Exit { kOk = 0, kUnsound = 1, kInput = 2, kConfig = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t i_max = 20;
  std::size_t clause_cap = kDefaultClauseCap;
  std::size_t backtrack_limit = 100;
  unsigned jobs = 1;
  std::optional<std::uint64_t> seed;
  std::string trace_dir;
  std::string translator_url;
  long translator_timeout_ms = 10000;
  bool json = false;
  bool explain = false;
  bool summary = false;
  bool nl = false;
  std::string dialect;
  std::string input;
  std::string out;
  bool no_oracle = false;
  bool no_timing = false;
  bool inject_fault = false;
  SuiteParams suite;
};

EngineConfig engine_config(const Options& o) {
  EngineConfig cfg;
  cfg.i_max = o.i_max;
  cfg.clause_cap = o.clause_cap;
  cfg.backtrack_limit = o.backtrack_limit;
  cfg.trace_level = o.summary ? TraceLevel::Summary : TraceLevel::Full;
  cfg.validate();
  return cfg;
}

std::optional<RemoteTranslatorEndpoint> endpoint(const Options& o) {
  std::string url = o.translator_url;
  if (url.empty())
    if (const char* env = std::getenv(kTranslatorUrlEnv)) url = env;
  if (url.empty()) return std::nullopt;
  if (o.translator_timeout_ms < 1) throw ConfigError("--translator-timeout must be positive");
  RemoteTranslatorEndpoint ep;
  ep.base_url = url;
  ep.timeout = std::chrono::milliseconds(o.translator_timeout_ms);
  if (const char* tok = std::getenv(kTranslatorTokenEnv)) ep.bearer_token = tok;
  return ep;
}

std::string read_input(const std::string& path) {
  std::stringstream ss;
  if (path.empty() || path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

std::string stem(const std::string& path) {
  if (path.empty() || path == "-") return "stdin";
  std::string name = path.substr(path.find_last_of('/') + 1);
  return name.substr(0, name.find('.'));
}

struct LoadedProblem {
  std::string id;
  std::vector<Formula> premises;
  Formula query;
};

LoadedProblem load_single(const Options& o) {
  const std::string text = read_input(o.input);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw InputError("empty input");

  std::optional<Dialect> dialect;
  if (!o.dialect.empty()) {
    dialect = parse_dialect(o.dialect);
    if (!dialect) throw ConfigError("unknown dialect '" + o.dialect + "'");
  }

  LoadedProblem lp;
  Problem p;
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (text[first] == '{') {
    try {
      p = problem_from_json(nlohmann::json::parse(text));
    } catch (const std::exception& e) {
      throw InputError(std::string("bad problem JSON: ") + e.what());
    }
    if (dialect) {
      p.nl = true;
      p.dialect = dialect;
    }
  } else if (dialect || o.nl) {
    std::vector<std::string> sentences = split_sentences(text);
    if (sentences.empty()) throw InputError("empty input");
    p.id = stem(o.input);
    p.nl = true;
    p.dialect = dialect;
    p.query = sentences.back();
    sentences.pop_back();
    p.premises = std::move(sentences);
  } else {
    ProblemSource src = read_problem_text(text, stem(o.input));
    ParsedProblem parsed = parse_problem(src);
    lp.id = parsed.id;
    lp.premises = std::move(parsed.premises);
    lp.query = std::move(parsed.query);
    return lp;
  }

  lp.id = p.id;
  if (!p.nl) {
    ProblemSource src;
    src.id = p.id;
    for (const std::string& s : p.premises) src.premises.push_back(split_gloss(s));
    src.query = p.query;
    ParsedProblem parsed = parse_problem(src);
    lp.premises = std::move(parsed.premises);
    lp.query = std::move(parsed.query);
  } else if (p.dialect) {
    std::vector<std::string> sentences = p.premises;
    sentences.push_back(p.query);
    TranslatedProblem t = translate_templated(sentences, *p.dialect);
    lp.premises = std::move(t.premises);
    lp.query = std::move(t.query);
  } else {
    auto ep = endpoint(o);
    if (!ep) throw InputError("natural-language input needs --dialect or --translator-url");
    TranslatedProblem t = translate_remote(p.premises, p.query, *ep);
    lp.premises = std::move(t.premises);
    lp.query = std::move(t.query);
  }
  return lp;
}

int cmd_solve(const Options& o) {
  const EngineConfig cfg = engine_config(o);
  LoadedProblem lp = load_single(o);
  Verdict v = solve(lp.premises, lp.query, cfg);
  v.id = lp.id;
  VerdictJsonOptions opts;
  opts.explain = o.explain;
  opts.trace_level = cfg.trace_level;
  const auto j = verdict_to_json(v, opts);
  std::cout << (o.json ? j.dump() : j.dump(2)) << '\n';
  if (!o.json) std::cerr << "answer: " << to_string(v.answer) << '\n';
  return kOk;
}

int cmd_check(const Options& o) {
  const EngineConfig cfg = engine_config(o);
  LoadedProblem lp = load_single(o);
  const Decomposition d = decompose(lp.premises, lp.query, cfg.clause_cap);
  if (oracle_exempt(d)) {
    std::cerr << "oracle-exempt: the clause set contains function terms\n";
    return kInput;
  }
  Answer oracle;
  try {
    oracle = oracle_answer(d);
  } catch (const AtomCapExceeded& e) {
    std::cerr << "oracle-exempt: " << e.what() << '\n';
    return kInput;
  }
  Answer engine = solve(d, cfg).answer;
  if (o.inject_fault) engine = engine == Answer::True ? Answer::False : Answer::True;

  const bool agree = engine == oracle;
  const bool incomplete = !agree && engine == Answer::Unknown;
  const std::string status = agree ? "agree" : incomplete ? "incomplete" : "soundness_violation";
  if (o.json) {
    nlohmann::ordered_json j;
    j["id"] = lp.id;
    j["engine"] = std::string(to_string(engine));
    j["oracle"] = std::string(to_string(oracle));
    j["status"] = status;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "engine: " << to_string(engine) << '\n';
    std::cout << "oracle: " << to_string(oracle) << '\n';
    if (agree) {
      std::cout << "agreement\n";
    } else if (incomplete) {
      std::cout << "incomplete: engine returned Unknown where the oracle decides " << to_string(oracle) << '\n';
    } else {
      std::cout << "SOUNDNESS VIOLATION\n";
    }
  }
  return agree || incomplete ? kOk : kUnsound;
}

int cmd_bench(const Options& o) {
  BenchConfig cfg;
  cfg.engine = engine_config(o);
  if (o.jobs < 1) throw ConfigError("--jobs must be at least 1");
  cfg.jobs = o.jobs;
  cfg.oracle = !o.no_oracle;
  cfg.remote = endpoint(o);
  if (!o.trace_dir.empty()) cfg.trace_dir = o.trace_dir;

  std::vector<Problem> problems;
  if (!o.input.empty()) {
    problems = load_problems(o.input);
  } else if (o.seed) {
    problems = generate_suite(*o.seed, o.suite);
  } else {
    throw InputError("bench needs a dataset file or --seed");
  }
  const Report r = run_benchmark(problems, cfg);
  const std::string payload = report_to_json(r, !o.no_timing).dump(2);
  if (!o.out.empty()) {
    std::ofstream out(o.out);
    if (!out) throw InputError("cannot write " + o.out);
    out << payload << '\n';
  }
  if (o.json) {
    std::cout << payload << '\n';
  } else {
    std::cout << report_table(r);
  }
  return kOk;
}

int cmd_gen(const Options& o) {
  const std::vector<Problem> suite = generate_suite(o.seed.value_or(1), o.suite);
  if (o.out.empty()) {
    write_problems_jsonl(suite, std::cout);
  } else {
    std::ofstream out(o.out);
    if (!out) throw InputError("cannot write " + o.out);
    write_problems_jsonl(suite, out);
  }
  return kOk;
}

void add_engine_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--i-max", o.i_max, "Resolve calls per path")->capture_default_str();
  cmd->add_option("--clause-cap", o.clause_cap, "Cap on CNF size and derived clauses per path")
      ->capture_default_str();
  cmd->add_option("--backtrack-limit", o.backtrack_limit, "Backtracks per path")->capture_default_str();
}

void add_input_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("input", o.input, "Problem file (text or JSON); stdin if omitted or '-'");
  cmd->add_option("--dialect", o.dialect, "Treat input as templated English: prontoqa, proofwriter, logicnli");
  cmd->add_flag("--nl", o.nl, "Treat input as English for the remote translator");
  cmd->add_option("--translator-url", o.translator_url,
                  std::string("Remote translator base URL (default from ") + kTranslatorUrlEnv + ")");
  cmd->add_option("--translator-timeout", o.translator_timeout_ms, "Remote translator timeout in ms")
      ->capture_default_str();
}

void add_suite_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--count", o.suite.count, "Problems to generate")->capture_default_str();
  cmd->add_option("--constants", o.suite.constants, "Constants per problem")->capture_default_str();
  cmd->add_option("--predicates", o.suite.predicates, "Predicates per problem")->capture_default_str();
  cmd->add_option("--clauses", o.suite.clauses, "Premises per problem")->capture_default_str();
  cmd->add_option("--depth", o.suite.depth, "Chain depth; 0 mixes 1..4")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Refutation-based first-order reasoning engine"};
  app.require_subcommand(1);

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one problem and print the verdict JSON");
  add_input_flags(solve_cmd, o);
  add_engine_flags(solve_cmd, o);
  solve_cmd->add_flag("--json", o.json, "Compact JSON, no diagnostics");
  solve_cmd->add_flag("--explain", o.explain, "Include decomposition forms");
  solve_cmd->add_flag("--summary", o.summary, "Omit per-step trace arrays");

  CLI::App* check_cmd = app.add_subcommand("check", "Compare the engine answer with the oracle");
  add_input_flags(check_cmd, o);
  add_engine_flags(check_cmd, o);
  check_cmd->add_flag("--json", o.json, "Machine-readable output");
  check_cmd->add_flag("--inject-fault", o.inject_fault)->group("");

  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a JSONL dataset or a generated suite");
  bench_cmd->add_option("dataset", o.input, "JSONL problem file");
  add_engine_flags(bench_cmd, o);
  add_suite_flags(bench_cmd, o);
  bench_cmd->add_option("--seed", o.seed, "Generate the suite from this seed instead of reading a file");
  bench_cmd->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();
  bench_cmd->add_option("--trace-dir", o.trace_dir, "Write one verdict trace per problem here");
  bench_cmd->add_option("--out", o.out, "Also write the report JSON to this file");
  bench_cmd->add_option("--translator-url", o.translator_url, "Remote translator base URL");
  bench_cmd->add_option("--translator-timeout", o.translator_timeout_ms, "Remote translator timeout in ms")
      ->capture_default_str();
  bench_cmd->add_flag("--json", o.json, "Print the report JSON instead of the table");
  bench_cmd->add_flag("--no-oracle", o.no_oracle, "Skip the oracle cross-check");
  bench_cmd->add_flag("--no-timing", o.no_timing, "Drop wall-time fields from the report");

  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate an oracle-labelled JSONL suite");
  gen_cmd->add_option("--seed", o.seed, "RNG seed (default 1)");
  add_suite_flags(gen_cmd, o);
  gen_cmd->add_option("--out", o.out, "Output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help() << std::flush;
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All) << std::flush;
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(o);
    if (check_cmd->parsed()) return cmd_check(o);
    if (bench_cmd->parsed()) return cmd_bench(o);
    if (gen_cmd->parsed()) return cmd_gen(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const LoadError& e) {
    std::cerr << "load error: " << e.what() << '\n';
    return kInput;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kConfig;
}
