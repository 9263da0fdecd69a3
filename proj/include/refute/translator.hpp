#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "refute/ast.hpp"

namespace refute {

enum class Dialect { ProntoQA, ProofWriter, LogicNLI };

std::string_view to_string(Dialect d);
std::optional<Dialect> parse_dialect(std::string_view s);

class UntranslatableSentence : public std::runtime_error {
 public:
  UntranslatableSentence(std::size_t index, std::string sentence);

  std::size_t index() const { return index_; }  // 0-based position in the input
  const std::string& sentence() const { return sentence_; }

 private:
  std::size_t index_;
  std::string sentence_;
};

// {{{ Template inventories

// Pattern syntax: words match case-insensitively, "a|an" lists alternatives,
// "," matches a comma, and slots are written {X}:
//   {S} {T}        proper name (capitalized word)
//   {A}..{D}       adjective, optionally preceded by "not"
//   {N} {M}        singular noun
//   {P} {Q}        plural noun (singularized on output)
// Output is formula text in which {S} expands to the name and {A:S} / {A:x}
// expands to "Adj(S, True|False)" / "Adj(x, True|False)".
struct TranslationRule {
  std::string pattern;
  std::string output;
};

struct TemplateInventory {
  std::string dialect;
  std::vector<std::string> query_prefixes;  // stripped from the statement
  std::vector<TranslationRule> rules;
};

// The inventory bundled with the library.
const TemplateInventory& builtin_inventory(Dialect d);
TemplateInventory parse_inventory(std::string_view json_text);
TemplateInventory load_inventory_file(const std::string& path);

// }}}

struct TranslatedProblem {
  std::vector<Formula> premises;
  Formula query;
  std::vector<std::string> premise_texts;  // symbolic form before parsing
  std::string query_text;
};

// Splits running text into sentences on '.', '?' and '!'.
std::vector<std::string> split_sentences(std::string_view text);

// Translates one sentence to symbolic text, or nullopt if no rule matches.
std::optional<std::string> translate_sentence(std::string_view sentence, const TemplateInventory& inv);

// The last sentence is the statement; the ones before it are premises.
TranslatedProblem translate_templated(const std::vector<std::string>& sentences, Dialect dialect);
TranslatedProblem translate_templated(const std::vector<std::string>& sentences,
                                      const TemplateInventory& inv);

// {{{ Remote translator

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kTranslatorUrlEnv = "REFUTE_TRANSLATOR_URL";
inline constexpr const char* kTranslatorTokenEnv = "REFUTE_TRANSLATOR_TOKEN";

struct RemoteTranslatorEndpoint {
  std::string base_url;  // http://host:port[/path]; path defaults to /translate
  std::chrono::milliseconds timeout{10000};
  unsigned retries = 2;  // extra attempts after the first
  std::string schema_version = "1";
  std::optional<std::string> bearer_token;
};

struct RemoteCallLog {
  unsigned attempts = 0;
  std::vector<std::string> failures;  // one line per failed attempt
};

// POST {premises, statement}; expects {facts, rules, query} whose strings parse
// under the grammar. Premises come back as facts followed by rules.
// Transport errors and unparseable formulas are retried `retries` times;
// a reply with missing or mistyped fields throws SchemaError at once.
TranslatedProblem translate_remote(const std::vector<std::string>& premises_nl,
                                   const std::string& statement_nl,
                                   const RemoteTranslatorEndpoint& ep, RemoteCallLog* log = nullptr);

// }}}

}  // namespace refute
