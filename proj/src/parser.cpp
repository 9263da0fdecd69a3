#include "refute/parser.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace refute {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column,
                       std::size_t premise_index)
    : std::runtime_error((premise_index ? "premise " + std::to_string(premise_index) + ": " : "") +
                         std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column),
      premise_index_(premise_index) {}

namespace {

// {{{ Lexer

enum class Tok {
  Ident, LParen, RParen, Comma, Dot,
  Not, And, Or, Xor, Implies, Iff, ForAll, Exists,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

struct Spelling {
  std::string_view text;
  Tok kind;
};

// Longest spellings first so "<->" wins over "->".
constexpr std::array kSymbols{
    Spelling{"<->", Tok::Iff}, Spelling{"->", Tok::Implies}, Spelling{"↔", Tok::Iff},
    Spelling{"→", Tok::Implies}, Spelling{"⇒", Tok::Implies}, Spelling{"∧", Tok::And},
    Spelling{"&", Tok::And},     Spelling{"∨", Tok::Or},      Spelling{"|", Tok::Or},
    Spelling{"¬", Tok::Not},     Spelling{"~", Tok::Not},     Spelling{"⊕", Tok::Xor},
    Spelling{"∀", Tok::ForAll},  Spelling{"∃", Tok::Exists},  Spelling{"(", Tok::LParen},
    Spelling{")", Tok::RParen},  Spelling{",", Tok::Comma},   Spelling{".", Tok::Dot},
};

bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_'; }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t bytes) {
    for (std::size_t k = 0; k < bytes; ++k) {
      unsigned char c = static_cast<unsigned char>(text[i + k]);
      if (c == '\n') {
        ++line;
        column = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++column;
      }
    }
    i += bytes;
  };
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (text.substr(i, 3) == ":::") {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(static_cast<unsigned char>(text[j]))) ++j;
      std::string word(text.substr(i, j - i));
      Tok kind = Tok::Ident;
      if (word == "xor") kind = Tok::Xor;
      else if (word == "forall") kind = Tok::ForAll;
      else if (word == "exists") kind = Tok::Exists;
      out.push_back({kind, word, line, column});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const Spelling& s : kSymbols) {
      if (text.substr(i, s.text.size()) == s.text) {
        out.push_back({s.kind, std::string(s.text), line, column});
        advance(s.text.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      std::size_t len = 1;
      if (c >= 0xC0) {
        while (i + len < text.size() && (static_cast<unsigned char>(text[i + len]) & 0xC0) == 0x80) ++len;
      }
      throw ParseError("unknown token '" + std::string(text.substr(i, len)) + "'", line, column);
    }
  }
  out.push_back({Tok::End, "", line, column});
  return out;
}

// }}}

// {{{ Recursive-descent parser

bool looks_like_variable(const std::string& name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
  for (std::size_t i = 1; i < name.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(name[i]);
    if (!std::isdigit(c) && c != '_') return false;
  }
  return true;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula parse_all() {
    if (peek().kind == Tok::End) throw error("empty input");
    Formula f = parse_iff();
    if (peek().kind != Tok::End) {
      if (peek().kind == Tok::RParen) throw error("unbalanced ')'");
      throw error("unexpected '" + peek().text + "'");
    }
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  ParseError error(const std::string& msg) const {
    return ParseError(msg, peek().line, peek().column);
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      if (peek().kind == Tok::End && kind == Tok::RParen) throw error("unbalanced '(': expected ')'");
      throw error(std::string("expected ") + what);
    }
    ++pos_;
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    while (peek().kind == Tok::Iff) {
      ++pos_;
      lhs = Formula::make_iff(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_xor();
    if (peek().kind == Tok::Implies) {
      ++pos_;
      return Formula::make_implies(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_xor() {
    Formula lhs = parse_or();
    while (peek().kind == Tok::Xor) {
      ++pos_;
      lhs = Formula::make_xor(std::move(lhs), parse_or());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (peek().kind == Tok::Or) {
      ++pos_;
      lhs = Formula::make_or(std::move(lhs), parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (peek().kind == Tok::And) {
      ++pos_;
      lhs = Formula::make_and(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::Not:
        ++pos_;
        return Formula::make_not(parse_unary());
      case Tok::ForAll:
      case Tok::Exists: return parse_quantifier();
      case Tok::LParen: {
        ++pos_;
        Formula f = parse_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: return parse_atom();
      case Tok::End: throw error("unexpected end of input");
      case Tok::RParen: throw error("unbalanced ')'");
      default: throw error("unexpected '" + peek().text + "'");
    }
  }

  Formula parse_quantifier() {
    const bool universal = take().kind == Tok::ForAll;
    std::vector<std::string> vars;
    do {
      if (!vars.empty()) ++pos_;  // comma
      if (peek().kind != Tok::Ident) throw error("expected a variable after quantifier");
      const Token& t = take();
      if (!std::islower(static_cast<unsigned char>(t.text[0])))
        throw ParseError("quantified variable must start lowercase: " + t.text, t.line, t.column);
      vars.push_back(t.text);
    } while (peek().kind == Tok::Comma);
    if (peek().kind == Tok::Dot) ++pos_;
    for (const std::string& v : vars) bound_.push_back(v);
    Formula body = parse_unary();
    bound_.resize(bound_.size() - vars.size());
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      body = universal ? Formula::make_forall(*it, std::move(body))
                       : Formula::make_exists(*it, std::move(body));
    }
    return body;
  }

  bool is_bound(const std::string& name) const {
    for (const std::string& b : bound_)
      if (b == name) return true;
    return false;
  }

  std::vector<Term> parse_args() {
    std::vector<Term> args;
    expect(Tok::LParen, "'('");
    if (peek().kind == Tok::RParen) {
      ++pos_;
      return args;
    }
    for (;;) {
      args.push_back(parse_term());
      if (peek().kind == Tok::Comma) {
        ++pos_;
        continue;
      }
      expect(Tok::RParen, "',' or ')'");
      return args;
    }
  }

  Term parse_term() {
    if (peek().kind != Tok::Ident) throw error("expected a term");
    const Token name = take();
    if (peek().kind == Tok::LParen) {
      std::vector<Term> args = parse_args();
      if (args.empty()) throw ParseError("function term without arguments", name.line, name.column);
      return Term::function(name.text, std::move(args));
    }
    if (std::islower(static_cast<unsigned char>(name.text[0])) &&
        (is_bound(name.text) || looks_like_variable(name.text)))
      return Term::variable(name.text);
    return Term::constant(name.text);
  }

  Formula parse_atom() {
    const Token name = take();
    if (name.text == "True" || name.text == "False")
      throw ParseError("boolean marker used as a formula", name.line, name.column);
    std::vector<Term> args;
    if (peek().kind == Tok::LParen) args = parse_args();
    try {
      return Formula::make_atom(canonicalize_literal(name.text, std::move(args)));
    } catch (const MalformedLiteral& e) {
      throw ParseError(e.what(), name.line, name.column);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

// Wraps the free variables in universals just inside any leading chain of
// explicit universals.
Formula close_universally(Formula f) {
  std::vector<std::string> free = free_variables(f);
  if (free.empty()) return f;
  Formula* slot = &f;
  while (slot->kind == Formula::Kind::ForAll) slot = &slot->children[0];
  Formula body = std::move(*slot);
  for (auto it = free.rbegin(); it != free.rend(); ++it) body = Formula::make_forall(*it, std::move(body));
  *slot = std::move(body);
  return f;
}

// }}}

// {{{ Rendering

int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Xor: return 3;
    case Formula::Kind::Or: return 4;
    case Formula::Kind::And: return 5;
    default: return 6;
  }
}

std::string_view connective(Formula::Kind k, bool ascii) {
  switch (k) {
    case Formula::Kind::And: return ascii ? "&" : "∧";
    case Formula::Kind::Or: return ascii ? "|" : "∨";
    case Formula::Kind::Implies: return ascii ? "->" : "→";
    case Formula::Kind::Iff: return ascii ? "<->" : "↔";
    case Formula::Kind::Xor: return ascii ? "xor" : "⊕";
    default: return "?";
  }
}

std::string render_impl(const Formula& f, bool ascii);

std::string render_child(const Formula& child, bool parens, bool ascii) {
  std::string s = render_impl(child, ascii);
  return parens ? "(" + s + ")" : s;
}

std::string render_impl(const Formula& f, bool ascii) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Atom: return render_literal(f.atom);
    case K::Not: return std::string(ascii ? "~" : "¬") + render_child(f.body(), f.body().is_binary(), ascii);
    case K::ForAll:
    case K::Exists: {
      std::string q = f.kind == K::ForAll ? (ascii ? "forall " : "∀") : (ascii ? "exists " : "∃");
      return q + f.var + " " + render_child(f.body(), f.body().is_binary(), ascii);
    }
    default: break;
  }
  const int p = precedence(f.kind);
  const bool right_assoc = f.kind == K::Implies;
  const int lp = precedence(f.lhs().kind), rp = precedence(f.rhs().kind);
  const bool lparen = lp < p || (lp == p && right_assoc);
  const bool rparen = rp < p || (rp == p && !right_assoc);
  return render_child(f.lhs(), lparen, ascii) + " " + std::string(connective(f.kind, ascii)) + " " +
         render_child(f.rhs(), rparen, ascii);
}

// }}}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(lex(text));
  return close_universally(p.parse_all());
}

std::string render(const Formula& f, bool ascii) { return render_impl(f, ascii); }

PremiseLine split_gloss(std::string_view line) {
  PremiseLine out;
  const std::size_t at = line.find(":::");
  if (at == std::string_view::npos) {
    out.text = trim(line);
    return out;
  }
  out.text = trim(line.substr(0, at));
  out.gloss = trim(line.substr(at + 3));
  return out;
}

ParsedProblem parse_problem(const ProblemSource& src) {
  ParsedProblem out;
  out.id = src.id;
  if (src.premises.empty()) throw ParseError("problem has no premises", 1, 1);
  out.premises.reserve(src.premises.size());
  for (std::size_t i = 0; i < src.premises.size(); ++i) {
    try {
      out.premises.push_back(parse_formula(src.premises[i].text));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), e.line(), e.column(), i + 1);
    }
  }
  try {
    out.query = parse_formula(src.query);
  } catch (const ParseError& e) {
    throw ParseError(std::string("query: ") + e.what(), e.line(), e.column());
  }
  return out;
}

ProblemSource read_problem_text(std::string_view text, std::string id) {
  ProblemSource src;
  src.id = std::move(id);
  bool have_query = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line[0] == '%') continue;
    if (line.rfind("?-", 0) == 0) {
      if (have_query) throw ParseError("more than one query", line_no, 1);
      src.query = split_gloss(std::string_view(line).substr(2)).text;
      have_query = true;
      continue;
    }
    src.premises.push_back(split_gloss(line));
  }
  if (!have_query) throw ParseError("no query line (\"?- ...\")", line_no, 1);
  if (src.premises.empty()) throw ParseError("problem has no premises", line_no, 1);
  return src;
}

}  // namespace refute
