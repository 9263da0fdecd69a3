#include "refute/translator.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "refute/parser.hpp"

namespace refute {

// Defined in the generated templates_embedded.cpp.
namespace embedded {
extern const char* const kProntoQA;
extern const char* const kProofWriter;
extern const char* const kLogicNLI;
}  // namespace embedded

std::string_view to_string(Dialect d) {
  switch (d) {
    case Dialect::ProntoQA: return "prontoqa";
    case Dialect::ProofWriter: return "proofwriter";
    case Dialect::LogicNLI: return "logicnli";
  }
  return "?";
}

std::optional<Dialect> parse_dialect(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "prontoqa") return Dialect::ProntoQA;
  if (lower == "proofwriter") return Dialect::ProofWriter;
  if (lower == "logicnli") return Dialect::LogicNLI;
  return std::nullopt;
}

UntranslatableSentence::UntranslatableSentence(std::size_t index, std::string sentence)
    : std::runtime_error("untranslatable sentence " + std::to_string(index + 1) + ": \"" + sentence + "\""),
      index_(index),
      sentence_(std::move(sentence)) {}

// {{{ Inventories

TemplateInventory parse_inventory(std::string_view json_text) {
  const auto j = nlohmann::json::parse(json_text);
  TemplateInventory inv;
  inv.dialect = j.at("dialect").get<std::string>();
  if (j.contains("query_prefixes"))
    inv.query_prefixes = j.at("query_prefixes").get<std::vector<std::string>>();
  for (const auto& t : j.at("templates"))
    inv.rules.push_back({t.at("pattern").get<std::string>(), t.at("output").get<std::string>()});
  return inv;
}

TemplateInventory load_inventory_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open template inventory " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_inventory(ss.str());
}

const TemplateInventory& builtin_inventory(Dialect d) {
  static const TemplateInventory prontoqa = parse_inventory(embedded::kProntoQA);
  static const TemplateInventory proofwriter = parse_inventory(embedded::kProofWriter);
  static const TemplateInventory logicnli = parse_inventory(embedded::kLogicNLI);
  switch (d) {
    case Dialect::ProntoQA: return prontoqa;
    case Dialect::ProofWriter: return proofwriter;
    case Dialect::LogicNLI: return logicnli;
  }
  throw std::invalid_argument("unknown dialect");
}

// }}}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string capitalize(std::string_view word) {
  std::string out = lower(word);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

bool alphabetic(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::isalpha(c); });
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool plural(std::string_view w) {
  const std::string l = lower(w);
  return l.size() > 2 && l.back() == 's' && !ends_with(l, "ss") && !ends_with(l, "us");
}

std::string singular(std::string_view w) {
  const std::string l = lower(w);
  if (ends_with(l, "uses") || ends_with(l, "sses") || ends_with(l, "xes") || ends_with(l, "ches") ||
      ends_with(l, "shes"))
    return l.substr(0, l.size() - 2);
  if (ends_with(l, "ies")) return l.substr(0, l.size() - 3) + "y";
  return l.substr(0, l.size() - 1);
}

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char ch : sentence) {
    const unsigned char c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      flush();
    } else if (ch == ',') {
      flush();
      out.emplace_back(",");
    } else if (ch == '.' || ch == '?' || ch == '!' || ch == ';') {
      flush();
    } else {
      cur += ch;
    }
  }
  flush();
  return out;
}

// {{{ Pattern matching

struct PatternToken {
  enum class Kind { Word, Comma, Slot };
  Kind kind;
  std::vector<std::string> alternatives;  // Word
  char slot = 0;                          // Slot
};

enum class SlotType { Name, Adjective, Noun, Plural };

SlotType slot_type(char c) {
  switch (c) {
    case 'S':
    case 'T': return SlotType::Name;
    case 'N':
    case 'M': return SlotType::Noun;
    case 'P':
    case 'Q': return SlotType::Plural;
    default: return SlotType::Adjective;
  }
}

std::vector<PatternToken> compile(std::string_view pattern) {
  std::vector<PatternToken> out;
  std::istringstream in{std::string(pattern)};
  std::string word;
  while (in >> word) {
    if (word == ",") {
      out.push_back({PatternToken::Kind::Comma, {}, 0});
    } else if (word.size() == 3 && word[0] == '{' && word[2] == '}') {
      out.push_back({PatternToken::Kind::Slot, {}, word[1]});
    } else {
      PatternToken t{PatternToken::Kind::Word, {}, 0};
      std::size_t start = 0;
      for (;;) {
        const std::size_t bar = word.find('|', start);
        t.alternatives.push_back(lower(word.substr(start, bar - start)));
        if (bar == std::string::npos) break;
        start = bar + 1;
      }
      out.push_back(std::move(t));
    }
  }
  return out;
}

int specificity(const std::vector<PatternToken>& p) {
  int score = 0;
  for (const PatternToken& t : p) {
    if (t.kind != PatternToken::Kind::Slot) {
      score += 10;
    } else if (slot_type(t.slot) == SlotType::Plural) {
      score += 2;
    } else if (slot_type(t.slot) == SlotType::Name) {
      score += 1;
    }
  }
  return score;
}

struct Binding {
  std::string word;
  bool negated = false;

  friend bool operator==(const Binding&, const Binding&) = default;
};

using Bindings = std::map<char, Binding>;

bool match(const std::vector<PatternToken>& p, std::size_t pi, const std::vector<std::string>& s,
           std::size_t si, Bindings& b) {
  if (pi == p.size()) return si == s.size();
  if (si == s.size()) return false;
  const PatternToken& t = p[pi];
  switch (t.kind) {
    case PatternToken::Kind::Comma:
      return s[si] == "," && match(p, pi + 1, s, si + 1, b);
    case PatternToken::Kind::Word: {
      const std::string w = lower(s[si]);
      if (std::find(t.alternatives.begin(), t.alternatives.end(), w) == t.alternatives.end()) return false;
      return match(p, pi + 1, s, si + 1, b);
    }
    case PatternToken::Kind::Slot: break;
  }

  auto try_bind = [&](Binding value, std::size_t consumed) {
    auto it = b.find(t.slot);
    if (it != b.end()) return it->second == value && match(p, pi + 1, s, si + consumed, b);
    b.emplace(t.slot, value);
    if (match(p, pi + 1, s, si + consumed, b)) return true;
    b.erase(t.slot);
    return false;
  };

  const std::string& w = s[si];
  switch (slot_type(t.slot)) {
    case SlotType::Name:
      return alphabetic(w) && std::isupper(static_cast<unsigned char>(w[0])) && try_bind({w, false}, 1);
    case SlotType::Noun:
      return alphabetic(w) && try_bind({lower(w), false}, 1);
    case SlotType::Plural:
      return alphabetic(w) && plural(w) && try_bind({singular(w), false}, 1);
    case SlotType::Adjective:
      if (lower(w) == "not") {
        return si + 1 < s.size() && alphabetic(s[si + 1]) && try_bind({lower(s[si + 1]), true}, 2);
      }
      return alphabetic(w) && try_bind({lower(w), false}, 1);
  }
  return false;
}

std::string expand(std::string_view output, const Bindings& b) {
  std::string out;
  std::size_t i = 0;
  while (i < output.size()) {
    if (output[i] != '{') {
      out += output[i++];
      continue;
    }
    const std::size_t close = output.find('}', i);
    if (close == std::string_view::npos) throw std::runtime_error("unterminated slot in template output");
    const std::string_view body = output.substr(i + 1, close - i - 1);
    i = close + 1;
    const char slot = body.at(0);
    const Binding& val = b.at(slot);
    if (body.size() == 1) {
      out += slot_type(slot) == SlotType::Name ? val.word : capitalize(val.word);
      continue;
    }
    // {X:arg}
    std::string arg(body.substr(2));
    if (arg.size() == 1 && b.count(arg[0]) && slot_type(arg[0]) == SlotType::Name) arg = b.at(arg[0]).word;
    out += capitalize(val.word) + "(" + arg + ", " + (val.negated ? "False" : "True") + ")";
  }
  return out;
}

// }}}

std::string strip_prefixes(std::string_view sentence, const std::vector<std::string>& prefixes) {
  std::string s(sentence);
  for (const std::string& p : prefixes) {
    const std::string ls = lower(s);
    std::size_t start = 0;
    while (start < ls.size() && std::isspace(static_cast<unsigned char>(ls[start]))) ++start;
    if (ls.compare(start, p.size(), p) == 0) {
      s = s.substr(start + p.size());
      break;
    }
  }
  return s;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    cur += c;
    if (c == '.' || c == '?' || c == '!') {
      if (tokenize(cur).size()) out.push_back(cur);
      cur.clear();
    }
  }
  if (!tokenize(cur).empty()) out.push_back(cur);
  for (std::string& s : out) {
    const std::size_t b = s.find_first_not_of(" \t\r\n");
    s = b == std::string::npos ? std::string() : s.substr(b);
  }
  return out;
}

std::optional<std::string> translate_sentence(std::string_view sentence, const TemplateInventory& inv) {
  const std::vector<std::string> toks = tokenize(sentence);
  if (toks.empty()) return std::nullopt;
  int best_score = -1;
  std::optional<std::string> best;
  for (const TranslationRule& rule : inv.rules) {
    const std::vector<PatternToken> pattern = compile(rule.pattern);
    Bindings b;
    if (!match(pattern, 0, toks, 0, b)) continue;
    const int score = specificity(pattern);
    if (score > best_score) {
      best_score = score;
      best = expand(rule.output, b);
    }
  }
  return best;
}

TranslatedProblem translate_templated(const std::vector<std::string>& sentences, Dialect dialect) {
  return translate_templated(sentences, builtin_inventory(dialect));
}

TranslatedProblem translate_templated(const std::vector<std::string>& sentences,
                                      const TemplateInventory& inv) {
  if (sentences.empty()) throw UntranslatableSentence(0, "");
  TranslatedProblem out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const bool is_query = i + 1 == sentences.size();
    const std::string text = is_query ? strip_prefixes(sentences[i], inv.query_prefixes) : sentences[i];
    std::optional<std::string> symbolic = translate_sentence(text, inv);
    if (!symbolic) throw UntranslatableSentence(i, sentences[i]);
    Formula f = parse_formula(*symbolic);
    if (is_query) {
      out.query = std::move(f);
      out.query_text = std::move(*symbolic);
    } else {
      out.premises.push_back(std::move(f));
      out.premise_texts.push_back(std::move(*symbolic));
    }
  }
  return out;
}

}  // namespace refute
