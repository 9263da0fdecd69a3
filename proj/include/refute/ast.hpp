#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace refute {

// {{{ Terms

struct Term {
  enum class Kind { Variable, Constant, Function };

  Kind kind = Kind::Constant;
  std::string name;
  std::vector<Term> args;  // non-empty only for Function

  static Term variable(std::string name);
  static Term constant(std::string name);
  static Term function(std::string name, std::vector<Term> args);

  bool is_variable() const { return kind == Kind::Variable; }
  bool is_constant() const { return kind == Kind::Constant; }
  bool is_function() const { return kind == Kind::Function; }
  bool ground() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);
};

std::string render_term(const Term& t);

// }}}

// {{{ Literals and clauses

enum class Sign { Positive, Negative };

inline Sign flip(Sign s) { return s == Sign::Positive ? Sign::Negative : Sign::Positive; }

struct Literal {
  std::string predicate;
  std::vector<Term> args;  // never contains the True/False polarity marker
  Sign sign = Sign::Positive;

  std::size_t arity() const { return args.size(); }
  bool positive() const { return sign == Sign::Positive; }
  Literal negated() const { return Literal{predicate, args, flip(sign)}; }
  bool ground() const;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b);
};

// Same predicate, same arity, identical arguments, opposite sign.
bool syntactically_complementary(const Literal& a, const Literal& b);

class MalformedLiteral : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Folds the trailing True/False argument and any outer negations into the
// literal sign. A marker anywhere but the final slot is rejected.
Literal canonicalize_literal(std::string predicate, std::vector<Term> raw_args,
                             unsigned outer_negations = 0);

// Rendering with the polarity as a final argument: Pred(arg1, ..., True|False).
std::string render_literal(const Literal& l);

struct Origin {
  enum class Kind { Premise, Derived, Query, NegatedQuery };
  Kind kind = Kind::Premise;
  std::size_t index = 0;  // 1-based premise index or derivation step id

  static Origin premise(std::size_t i) { return {Kind::Premise, i}; }
  static Origin derived(std::size_t step) { return {Kind::Derived, step}; }
  static Origin query() { return {Kind::Query, 0}; }
  static Origin negated_query() { return {Kind::NegatedQuery, 0}; }

  friend bool operator==(const Origin&, const Origin&) = default;
};

std::string render_origin(const Origin& o);

// A disjunction of literals. Construction merges identical literals; the
// empty clause stands for a contradiction.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals, Origin origin = {});

  const std::vector<Literal>& literals() const { return literals_; }
  const Origin& origin() const { return origin_; }
  void set_origin(Origin o) { origin_ = o; }

  std::size_t size() const { return literals_.size(); }
  bool empty() const { return literals_.empty(); }
  bool unit() const { return literals_.size() == 1; }
  const Literal& operator[](std::size_t i) const { return literals_[i]; }

  bool tautology() const;
  bool ground() const;
  bool has_functions() const;
  std::set<std::string> variables() const;

  // Literal-list equality including order; origin is ignored.
  friend bool operator==(const Clause& a, const Clause& b) { return a.literals_ == b.literals_; }

 private:
  std::vector<Literal> literals_;
  Origin origin_;
};

// Joined with " ∨ " (or " | " when ascii is set); the empty clause is "⊥".
std::string render_clause(const Clause& c, bool ascii = false);

// True iff some bijective variable renaming maps a's literal multiset onto b's.
bool clause_equal_mod_renaming(const Clause& a, const Clause& b);

// Variable-blind key: equal for clauses that are equal modulo renaming.
std::string clause_shape_key(const Clause& c);

// }}}

// {{{ Formulas

struct Formula {
  enum class Kind { Atom, Not, And, Or, Implies, Iff, Xor, ForAll, Exists };

  Kind kind = Kind::Atom;
  Literal atom;                    // Atom
  std::string var;                 // ForAll / Exists
  std::vector<Formula> children;   // 1 for Not/quantifiers, 2 for binary

  static Formula make_atom(Literal l);
  static Formula make_not(Formula f);
  static Formula make_binary(Kind k, Formula lhs, Formula rhs);
  static Formula make_and(Formula lhs, Formula rhs) { return make_binary(Kind::And, std::move(lhs), std::move(rhs)); }
  static Formula make_or(Formula lhs, Formula rhs) { return make_binary(Kind::Or, std::move(lhs), std::move(rhs)); }
  static Formula make_implies(Formula lhs, Formula rhs) { return make_binary(Kind::Implies, std::move(lhs), std::move(rhs)); }
  static Formula make_iff(Formula lhs, Formula rhs) { return make_binary(Kind::Iff, std::move(lhs), std::move(rhs)); }
  static Formula make_xor(Formula lhs, Formula rhs) { return make_binary(Kind::Xor, std::move(lhs), std::move(rhs)); }
  static Formula make_forall(std::string var, Formula body);
  static Formula make_exists(std::string var, Formula body);

  bool is_binary() const;
  bool is_quantifier() const { return kind == Kind::ForAll || kind == Kind::Exists; }
  const Formula& lhs() const { return children.at(0); }
  const Formula& rhs() const { return children.at(1); }
  const Formula& body() const { return children.at(0); }

  friend bool operator==(const Formula&, const Formula&) = default;
};

// Variables occurring free, in order of first occurrence.
std::vector<std::string> free_variables(const Formula& f);

// Constant and function symbols, used for skolem collision checks.
std::set<std::string> function_symbols(const Formula& f);

// }}}

// {{{ Answers

enum class Answer { True, False, Unknown, SelfContradictory };

std::string_view to_string(Answer a);
std::optional<Answer> parse_answer(std::string_view s);

enum class PathKind { FromS, FromNegS };

std::string_view to_string(PathKind p);

struct Determination {
  bool entails = false;
  PathKind path = PathKind::FromS;

  friend bool operator==(const Determination&, const Determination&) = default;
};

// }}}

}  // namespace refute
