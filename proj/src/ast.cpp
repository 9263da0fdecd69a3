#include "refute/ast.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace refute {

namespace {

template <class T>
std::strong_ordering compare_lists(const std::vector<T>& a, const std::vector<T>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  return a.size() <=> b.size();
}

}  // namespace

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.name <=> b.name; c != 0) return c;
  return compare_lists(a.args, b.args);
}

std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
  if (auto c = a.predicate <=> b.predicate; c != 0) return c;
  if (auto c = compare_lists(a.args, b.args); c != 0) return c;
  return a.sign <=> b.sign;
}

Term Term::variable(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  return Term{Kind::Variable, std::move(name), {}};
}

Term Term::constant(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty constant name");
  return Term{Kind::Constant, std::move(name), {}};
}

Term Term::function(std::string name, std::vector<Term> args) {
  if (name.empty()) throw std::invalid_argument("empty function name");
  if (args.empty()) throw std::invalid_argument("function term needs arity >= 1");
  return Term{Kind::Function, std::move(name), std::move(args)};
}

bool Term::ground() const {
  if (is_variable()) return false;
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.ground(); });
}

std::string render_term(const Term& t) {
  if (!t.is_function()) return t.name;
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ", ";
    out += render_term(t.args[i]);
  }
  return out + ")";
}

bool Literal::ground() const {
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.ground(); });
}

bool syntactically_complementary(const Literal& a, const Literal& b) {
  return a.sign != b.sign && a.predicate == b.predicate && a.args == b.args;
}

namespace {

bool is_marker(const Term& t) {
  return t.is_constant() && (t.name == "True" || t.name == "False");
}

}  // namespace

Literal canonicalize_literal(std::string predicate, std::vector<Term> raw_args,
                             unsigned outer_negations) {
  if (predicate.empty()) throw MalformedLiteral("empty predicate name");
  bool positive = true;
  for (std::size_t i = 0; i < raw_args.size(); ++i) {
    if (!is_marker(raw_args[i])) continue;
    if (i + 1 != raw_args.size()) {
      throw MalformedLiteral("boolean marker " + raw_args[i].name + " in non-final argument of " +
                             predicate);
    }
    positive = raw_args[i].name == "True";
    raw_args.pop_back();
  }
  if (outer_negations % 2 == 1) positive = !positive;
  return Literal{std::move(predicate), std::move(raw_args),
                 positive ? Sign::Positive : Sign::Negative};
}

std::string render_literal(const Literal& l) {
  std::string out = l.predicate + "(";
  for (const Term& t : l.args) out += render_term(t) + ", ";
  out += l.positive() ? "True" : "False";
  return out + ")";
}

std::string render_origin(const Origin& o) {
  switch (o.kind) {
    case Origin::Kind::Premise: return "premise " + std::to_string(o.index);
    case Origin::Kind::Derived: return "derived " + std::to_string(o.index);
    case Origin::Kind::Query: return "query";
    case Origin::Kind::NegatedQuery: return "negated query";
  }
  return "?";
}

Clause::Clause(std::vector<Literal> literals, Origin origin) : origin_(origin) {
  literals_.reserve(literals.size());
  for (Literal& l : literals) {
    if (std::find(literals_.begin(), literals_.end(), l) == literals_.end()) {
      literals_.push_back(std::move(l));
    }
  }
}

bool Clause::tautology() const {
  for (std::size_t i = 0; i < literals_.size(); ++i)
    for (std::size_t j = i + 1; j < literals_.size(); ++j)
      if (syntactically_complementary(literals_[i], literals_[j])) return true;
  return false;
}

bool Clause::ground() const {
  return std::all_of(literals_.begin(), literals_.end(), [](const Literal& l) { return l.ground(); });
}

namespace {

bool term_has_function(const Term& t) { return t.is_function(); }

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) out.insert(t.name);
  for (const Term& a : t.args) collect_vars(a, out);
}

}  // namespace

bool Clause::has_functions() const {
  for (const Literal& l : literals_)
    if (std::any_of(l.args.begin(), l.args.end(), term_has_function)) return true;
  return false;
}

std::set<std::string> Clause::variables() const {
  std::set<std::string> out;
  for (const Literal& l : literals_)
    for (const Term& t : l.args) collect_vars(t, out);
  return out;
}

std::string render_clause(const Clause& c, bool ascii) {
  if (c.empty()) return ascii ? "_|_" : "⊥";
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ascii ? " | " : " ∨ ";
    out += render_literal(c[i]);
  }
  return out;
}

// {{{ Equality modulo renaming

namespace {

using VarMap = std::map<std::string, std::string>;

bool match_term(const Term& a, const Term& b, VarMap& fwd, VarMap& bwd) {
  if (a.kind != b.kind) return false;
  if (a.is_variable()) {
    auto f = fwd.find(a.name);
    auto r = bwd.find(b.name);
    if (f == fwd.end() && r == bwd.end()) {
      fwd.emplace(a.name, b.name);
      bwd.emplace(b.name, a.name);
      return true;
    }
    return f != fwd.end() && r != bwd.end() && f->second == b.name && r->second == a.name;
  }
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!match_term(a.args[i], b.args[i], fwd, bwd)) return false;
  return true;
}

bool match_literal(const Literal& a, const Literal& b, VarMap& fwd, VarMap& bwd) {
  if (a.sign != b.sign || a.predicate != b.predicate || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!match_term(a.args[i], b.args[i], fwd, bwd)) return false;
  return true;
}

bool match_from(const Clause& a, const Clause& b, std::size_t i, std::vector<bool>& used,
                const VarMap& fwd, const VarMap& bwd) {
  if (i == a.size()) return true;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (used[j]) continue;
    VarMap f = fwd, r = bwd;
    if (!match_literal(a[i], b[j], f, r)) continue;
    used[j] = true;
    if (match_from(a, b, i + 1, used, f, r)) return true;
    used[j] = false;
  }
  return false;
}

void shape_term(const Term& t, std::string& out) {
  if (t.is_variable()) {
    out += '?';
    return;
  }
  out += t.name;
  if (t.is_function()) {
    out += '(';
    for (const Term& a : t.args) {
      shape_term(a, out);
      out += ',';
    }
    out += ')';
  }
}

}  // namespace

bool clause_equal_mod_renaming(const Clause& a, const Clause& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  return match_from(a, b, 0, used, {}, {});
}

std::string clause_shape_key(const Clause& c) {
  std::vector<std::string> parts;
  parts.reserve(c.size());
  for (const Literal& l : c.literals()) {
    std::string s = (l.positive() ? "+" : "-") + l.predicate + "(";
    for (const Term& t : l.args) {
      shape_term(t, s);
      s += ',';
    }
    parts.push_back(s + ")");
  }
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const std::string& p : parts) key += p + ";";
  return key;
}

// }}}

// {{{ Formulas

Formula Formula::make_atom(Literal l) {
  Formula f;
  f.kind = Kind::Atom;
  f.atom = std::move(l);
  return f;
}

Formula Formula::make_not(Formula inner) {
  Formula f;
  f.kind = Kind::Not;
  f.children.push_back(std::move(inner));
  return f;
}

Formula Formula::make_binary(Kind k, Formula lhs, Formula rhs) {
  Formula f;
  f.kind = k;
  f.children.push_back(std::move(lhs));
  f.children.push_back(std::move(rhs));
  if (!f.is_binary()) throw std::invalid_argument("make_binary with a non-binary connective");
  return f;
}

Formula Formula::make_forall(std::string var, Formula body) {
  Formula f;
  f.kind = Kind::ForAll;
  f.var = std::move(var);
  f.children.push_back(std::move(body));
  return f;
}

Formula Formula::make_exists(std::string var, Formula body) {
  Formula f;
  f.kind = Kind::Exists;
  f.var = std::move(var);
  f.children.push_back(std::move(body));
  return f;
}

bool Formula::is_binary() const {
  switch (kind) {
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
    case Kind::Xor: return true;
    default: return false;
  }
}

namespace {

void free_vars_term(const Term& t, std::vector<std::string>& bound, std::vector<std::string>& out) {
  if (t.is_variable()) {
    if (std::find(bound.begin(), bound.end(), t.name) == bound.end() &&
        std::find(out.begin(), out.end(), t.name) == out.end())
      out.push_back(t.name);
    return;
  }
  for (const Term& a : t.args) free_vars_term(a, bound, out);
}

void free_vars(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  if (f.kind == Formula::Kind::Atom) {
    for (const Term& t : f.atom.args) free_vars_term(t, bound, out);
    return;
  }
  if (f.is_quantifier()) {
    bound.push_back(f.var);
    free_vars(f.body(), bound, out);
    bound.pop_back();
    return;
  }
  for (const Formula& c : f.children) free_vars(c, bound, out);
}

void symbols_term(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) return;
  out.insert(t.name);
  for (const Term& a : t.args) symbols_term(a, out);
}

}  // namespace

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound, out;
  free_vars(f, bound, out);
  return out;
}

std::set<std::string> function_symbols(const Formula& f) {
  std::set<std::string> out;
  if (f.kind == Formula::Kind::Atom) {
    for (const Term& t : f.atom.args) symbols_term(t, out);
    return out;
  }
  for (const Formula& c : f.children) out.merge(function_symbols(c));
  return out;
}

// }}}

std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::True: return "True";
    case Answer::False: return "False";
    case Answer::Unknown: return "Unknown";
    case Answer::SelfContradictory: return "SelfContradictory";
  }
  return "?";
}

std::optional<Answer> parse_answer(std::string_view s) {
  if (s == "True" || s == "true") return Answer::True;
  if (s == "False" || s == "false") return Answer::False;
  if (s == "Unknown" || s == "unknown") return Answer::Unknown;
  if (s == "SelfContradictory" || s == "Self-Contradictory" || s == "self-contradictory")
    return Answer::SelfContradictory;
  return std::nullopt;
}

std::string_view to_string(PathKind p) { return p == PathKind::FromS ? "FromS" : "FromNegS"; }

}  // namespace refute
