#include "refute/decomposer.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "refute/resolver.hpp"

namespace refute {

using K = Formula::Kind;

SkolemCounter::SkolemCounter(std::set<std::string> reserved, std::string prefix)
    : reserved_(std::move(reserved)), prefix_(std::move(prefix)) {}

std::string SkolemCounter::next() {
  std::string name = prefix_ + std::to_string(next_id_++);
  if (reserved_.count(name)) {
    std::size_t suffix = 1;
    while (reserved_.count(name + "_" + std::to_string(suffix))) ++suffix;
    name += "_" + std::to_string(suffix);
  }
  reserved_.insert(name);
  return name;
}

Formula eliminate_connectives(const Formula& f) {
  switch (f.kind) {
    case K::Atom: return f;
    case K::Not: return Formula::make_not(eliminate_connectives(f.body()));
    case K::ForAll: return Formula::make_forall(f.var, eliminate_connectives(f.body()));
    case K::Exists: return Formula::make_exists(f.var, eliminate_connectives(f.body()));
    default: break;
  }
  Formula a = eliminate_connectives(f.lhs());
  Formula b = eliminate_connectives(f.rhs());
  switch (f.kind) {
    case K::And: return Formula::make_and(std::move(a), std::move(b));
    case K::Or: return Formula::make_or(std::move(a), std::move(b));
    case K::Implies: return Formula::make_or(Formula::make_not(std::move(a)), std::move(b));
    case K::Iff:
      return Formula::make_and(Formula::make_or(Formula::make_not(a), b),
                               Formula::make_or(a, Formula::make_not(b)));
    case K::Xor:
      return Formula::make_and(Formula::make_or(a, b),
                               Formula::make_or(Formula::make_not(a), Formula::make_not(b)));
    default: break;
  }
  throw std::logic_error("eliminate_connectives: unhandled formula kind");
}

namespace {

Formula nnf(const Formula& f, bool negate) {
  switch (f.kind) {
    case K::Atom: return Formula::make_atom(negate ? f.atom.negated() : f.atom);
    case K::Not: return nnf(f.body(), !negate);
    case K::And:
    case K::Or: {
      const bool conj = (f.kind == K::And) != negate;
      Formula a = nnf(f.lhs(), negate), b = nnf(f.rhs(), negate);
      return conj ? Formula::make_and(std::move(a), std::move(b))
                  : Formula::make_or(std::move(a), std::move(b));
    }
    case K::ForAll:
    case K::Exists: {
      const bool universal = (f.kind == K::ForAll) != negate;
      Formula body = nnf(f.body(), negate);
      return universal ? Formula::make_forall(f.var, std::move(body))
                       : Formula::make_exists(f.var, std::move(body));
    }
    default: return nnf(eliminate_connectives(f), negate);
  }
}

Term substitute_var(const Term& t, const std::string& var, const Term& value) {
  if (t.is_variable()) return t.name == var ? value : t;
  Term out = t;
  for (Term& a : out.args) a = substitute_var(a, var, value);
  return out;
}

Formula substitute_var(const Formula& f, const std::string& var, const Term& value) {
  if (f.kind == K::Atom) {
    Formula out = f;
    for (Term& a : out.atom.args) a = substitute_var(a, var, value);
    return out;
  }
  if (f.is_quantifier() && f.var == var) return f;  // shadowed
  Formula out = f;
  for (Formula& c : out.children) c = substitute_var(c, var, value);
  return out;
}

struct Standardizer {
  std::set<std::string> used;
  std::vector<std::pair<std::string, std::string>> scope;  // original -> renamed

  std::string lookup(const std::string& v) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == v) return it->second;
    return v;
  }

  Term term(const Term& t) const {
    if (t.is_variable()) return Term::variable(lookup(t.name));
    Term out = t;
    for (Term& a : out.args) a = term(a);
    return out;
  }

  Formula run(const Formula& f) {
    if (f.kind == K::Atom) {
      Formula out = f;
      for (Term& a : out.atom.args) a = term(a);
      return out;
    }
    if (f.is_quantifier()) {
      std::string name = f.var;
      if (used.count(name)) {
        std::size_t k = 1;
        while (used.count(f.var + "_" + std::to_string(k))) ++k;
        name = f.var + "_" + std::to_string(k);
      }
      used.insert(name);
      scope.emplace_back(f.var, name);
      Formula body = run(f.body());
      scope.pop_back();
      return f.kind == K::ForAll ? Formula::make_forall(name, std::move(body))
                                 : Formula::make_exists(name, std::move(body));
    }
    Formula out = f;
    for (Formula& c : out.children) c = run(c);
    return out;
  }
};

Formula skolemize(const Formula& f, std::vector<std::string>& universals, SkolemCounter& sk) {
  switch (f.kind) {
    case K::Atom: return f;
    case K::And:
    case K::Or: {
      Formula a = skolemize(f.lhs(), universals, sk);
      Formula b = skolemize(f.rhs(), universals, sk);
      return Formula::make_binary(f.kind, std::move(a), std::move(b));
    }
    case K::ForAll: {
      universals.push_back(f.var);
      Formula body = skolemize(f.body(), universals, sk);
      universals.pop_back();
      return body;
    }
    case K::Exists: {
      Term witness;
      if (universals.empty()) {
        witness = Term::constant(sk.next());
      } else {
        std::vector<Term> args;
        for (const std::string& u : universals) args.push_back(Term::variable(u));
        witness = Term::function(sk.next(), std::move(args));
      }
      return skolemize(substitute_var(f.body(), f.var, witness), universals, sk);
    }
    default: throw std::logic_error("skolemize_and_prenex: input is not in negation normal form");
  }
}

using RawClause = std::vector<Literal>;

std::vector<RawClause> distribute(const Formula& f, std::size_t cap) {
  switch (f.kind) {
    case K::Atom: return {RawClause{f.atom}};
    case K::And: {
      std::vector<RawClause> a = distribute(f.lhs(), cap);
      std::vector<RawClause> b = distribute(f.rhs(), cap);
      if (a.size() + b.size() > cap)
        throw ClauseBlowup("CNF exceeds " + std::to_string(cap) + " clauses");
      a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
      return a;
    }
    case K::Or: {
      std::vector<RawClause> a = distribute(f.lhs(), cap);
      std::vector<RawClause> b = distribute(f.rhs(), cap);
      if (a.size() * b.size() > cap)
        throw ClauseBlowup("CNF exceeds " + std::to_string(cap) + " clauses");
      std::vector<RawClause> out;
      out.reserve(a.size() * b.size());
      for (const RawClause& x : a) {
        for (const RawClause& y : b) {
          RawClause c = x;
          c.insert(c.end(), y.begin(), y.end());
          out.push_back(std::move(c));
        }
      }
      return out;
    }
    default: throw std::logic_error("to_cnf: input is not a quantifier-free NNF matrix");
  }
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

Formula standardize_bound_variables(const Formula& f) {
  Standardizer s;
  for (const std::string& v : free_variables(f)) s.used.insert(v);
  return s.run(f);
}

Formula skolemize_and_prenex(const Formula& nnf, SkolemCounter& sk) {
  std::vector<std::string> universals;
  return skolemize(nnf, universals, sk);
}

std::vector<Clause> to_cnf(const Formula& matrix, Origin origin, std::size_t cap) {
  std::vector<Clause> out;
  std::unordered_map<std::string, std::vector<std::size_t>> by_shape;
  for (RawClause& raw : distribute(matrix, cap)) {
    Clause c(std::move(raw), origin);
    if (c.tautology()) continue;
    auto& bucket = by_shape[clause_shape_key(c)];
    const bool dup = std::any_of(bucket.begin(), bucket.end(),
                                 [&](std::size_t i) { return clause_equal_mod_renaming(out[i], c); });
    if (dup) continue;
    bucket.push_back(out.size());
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

DecomposeSteps run_pipeline(const Formula& f, SkolemCounter& sk, Origin origin, std::size_t cap) {
  DecomposeSteps steps;
  steps.nnf = to_nnf(standardize_bound_variables(eliminate_connectives(f)));
  steps.skolemized = skolemize_and_prenex(steps.nnf, sk);
  steps.clauses = to_cnf(steps.skolemized, origin, cap);
  return steps;
}

Clause single_unit(const DecomposeSteps& steps, const char* what) {
  if (steps.clauses.size() != 1 || !steps.clauses.front().unit())
    throw NonAtomicQuery(std::string(what) + " does not reduce to a single literal (" +
                         std::to_string(steps.clauses.size()) + " clauses)");
  return steps.clauses.front();
}

}  // namespace

Decomposition decompose(const std::vector<Formula>& premises, const Formula& query,
                        std::size_t cap) {
  std::set<std::string> symbols = function_symbols(query);
  for (const Formula& p : premises) symbols.merge(function_symbols(p));
  SkolemCounter sk(std::move(symbols));

  Decomposition out;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    DecomposeSteps steps = run_pipeline(premises[i], sk, Origin::premise(i + 1), cap);
    out.premises.insert(out.premises.end(), steps.clauses.begin(), steps.clauses.end());
    out.premise_steps.push_back(std::move(steps));
  }
  out.query_steps = run_pipeline(query, sk, Origin::query(), cap);
  out.query = single_unit(out.query_steps, "query");
  DecomposeSteps neg = run_pipeline(Formula::make_not(query), sk, Origin::negated_query(), cap);
  out.negated_query = single_unit(neg, "negated query");
  return out;
}

}  // namespace refute
