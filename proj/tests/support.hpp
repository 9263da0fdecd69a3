#pragma once

// Helpers shared by the unit and acceptance tests: clause construction from
// text, random generators, and a naive propositional evaluator that does not
// go through the oracle module.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "refute/ast.hpp"
#include "refute/decomposer.hpp"
#include "refute/parser.hpp"

namespace refute::testing {

// A single clause written in the grammar, e.g. "Green(x, False) ∨ Nice(x, True)".
inline Clause clause_of(const std::string& text, Origin origin = {}) {
  Formula f = parse_formula(text);
  SkolemCounter sk;
  std::vector<Clause> cs = to_cnf(skolemize_and_prenex(standardize_bound_variables(to_nnf(f)), sk), origin);
  if (cs.size() != 1) throw std::runtime_error("clause_of: not a single clause: " + text);
  return cs.front();
}

inline std::vector<Clause> clauses_of(const std::vector<std::string>& texts) {
  std::vector<Clause> out;
  for (std::size_t i = 0; i < texts.size(); ++i) out.push_back(clause_of(texts[i], Origin::premise(i + 1)));
  return out;
}

inline Literal lit(const std::string& pred, std::vector<Term> args, bool positive = true) {
  return Literal{pred, std::move(args), positive ? Sign::Positive : Sign::Negative};
}

inline Term var(const std::string& n) { return Term::variable(n); }
inline Term con(const std::string& n) { return Term::constant(n); }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(g_() % n); }
  bool coin() { return g_() & 1u; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 g_;
};

inline const std::vector<std::string> kPreds{"P", "Q", "R", "Red", "Kind"};
inline const std::vector<std::string> kConsts{"Anne", "Bob", "Dave"};
inline const std::vector<std::string> kVars{"x", "y", "z"};

// Random clause over unary and binary predicates with variables and constants.
inline Clause random_clause(Rng& r, std::size_t max_len = 3, bool allow_vars = true) {
  std::vector<Literal> ls;
  const std::size_t n = 1 + r.below(max_len);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& p = r.pick(kPreds);
    const std::size_t arity = p.size() == 1 ? 2 : 1;
    std::vector<Term> args;
    for (std::size_t a = 0; a < arity; ++a)
      args.push_back(allow_vars && r.coin() ? var(r.pick(kVars)) : con(r.pick(kConsts)));
    ls.push_back(lit(p, std::move(args), r.coin()));
  }
  return Clause(std::move(ls));
}

// {{{ Propositional formulas over ground atoms A0(C) .. A{n-1}(C)

inline Formula prop_atom(std::size_t i, bool positive = true) {
  return Formula::make_atom(lit("A" + std::to_string(i), {con("C")}, positive));
}

inline Formula random_prop_formula(Rng& r, std::size_t atoms, int depth) {
  if (depth <= 0 || r.below(4) == 0) return prop_atom(r.below(atoms), r.below(4) != 0);
  switch (r.below(7)) {
    case 0: return Formula::make_not(random_prop_formula(r, atoms, depth - 1));
    case 1: return Formula::make_and(random_prop_formula(r, atoms, depth - 1), random_prop_formula(r, atoms, depth - 1));
    case 2: return Formula::make_or(random_prop_formula(r, atoms, depth - 1), random_prop_formula(r, atoms, depth - 1));
    case 3: return Formula::make_implies(random_prop_formula(r, atoms, depth - 1), random_prop_formula(r, atoms, depth - 1));
    case 4: return Formula::make_iff(random_prop_formula(r, atoms, depth - 1), random_prop_formula(r, atoms, depth - 1));
    case 5: return Formula::make_xor(random_prop_formula(r, atoms, depth - 1), random_prop_formula(r, atoms, depth - 1));
    default: return Formula::make_and(random_prop_formula(r, atoms, depth - 1), random_prop_formula(r, atoms, depth - 1));
  }
}

inline std::size_t atom_index(const Literal& l) { return std::stoul(l.predicate.substr(1)); }

// Direct truth-table semantics; bit i of the assignment is atom i.
inline bool eval_prop(const Formula& f, std::uint32_t assignment) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Atom: {
      const bool v = (assignment >> atom_index(f.atom)) & 1u;
      return f.atom.positive() ? v : !v;
    }
    case K::Not: return !eval_prop(f.body(), assignment);
    case K::And: return eval_prop(f.lhs(), assignment) && eval_prop(f.rhs(), assignment);
    case K::Or: return eval_prop(f.lhs(), assignment) || eval_prop(f.rhs(), assignment);
    case K::Implies: return !eval_prop(f.lhs(), assignment) || eval_prop(f.rhs(), assignment);
    case K::Iff: return eval_prop(f.lhs(), assignment) == eval_prop(f.rhs(), assignment);
    case K::Xor: return eval_prop(f.lhs(), assignment) != eval_prop(f.rhs(), assignment);
    default: throw std::logic_error("eval_prop: quantifier");
  }
}

inline bool eval_cnf(const std::vector<Clause>& cnf, std::uint32_t assignment) {
  for (const Clause& c : cnf) {
    bool sat = false;
    for (const Literal& l : c.literals()) {
      const bool v = (assignment >> atom_index(l)) & 1u;
      sat = sat || (l.positive() ? v : !v);
    }
    if (!sat) return false;
  }
  return true;
}

// }}}

// {{{ Random closed first-order formulas for round trips

inline Formula random_fo_formula(Rng& r, int depth, std::vector<std::string>& scope) {
  if (depth <= 0 || r.below(5) == 0) {
    const std::string& p = r.pick(kPreds);
    const std::size_t arity = p.size() == 1 ? 2 : 1;
    std::vector<Term> args;
    for (std::size_t a = 0; a < arity; ++a) {
      if (!scope.empty() && r.coin()) {
        args.push_back(var(r.pick(scope)));
      } else if (r.below(6) == 0) {
        args.push_back(Term::function("f", {con(r.pick(kConsts))}));
      } else {
        args.push_back(con(r.pick(kConsts)));
      }
    }
    return Formula::make_atom(lit(p, std::move(args), r.coin()));
  }
  using K = Formula::Kind;
  const std::size_t choice = r.below(9);
  if (choice == 0) return Formula::make_not(random_fo_formula(r, depth - 1, scope));
  if (choice == 1 || choice == 2) {
    const std::string v = "v" + std::to_string(scope.size());
    scope.push_back(v);
    Formula body = random_fo_formula(r, depth - 1, scope);
    scope.pop_back();
    return choice == 1 ? Formula::make_forall(v, std::move(body)) : Formula::make_exists(v, std::move(body));
  }
  static const K binary[] = {K::And, K::Or, K::Implies, K::Iff, K::Xor, K::And};
  Formula lhs = random_fo_formula(r, depth - 1, scope);
  Formula rhs = random_fo_formula(r, depth - 1, scope);
  return Formula::make_binary(binary[choice - 3], std::move(lhs), std::move(rhs));
}

inline Formula random_fo_formula(Rng& r, int depth) {
  std::vector<std::string> scope;
  return random_fo_formula(r, depth, scope);
}

// }}}

}  // namespace refute::testing
