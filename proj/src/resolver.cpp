#include "refute/resolver.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace refute {

Term substitute(const Substitution& s, const Term& t) {
  if (t.is_variable()) {
    auto it = s.find(t.name);
    return it == s.end() ? t : it->second;
  }
  if (!t.is_function()) return t;
  Term out = t;
  for (Term& a : out.args) a = substitute(s, a);
  return out;
}

Literal substitute(const Substitution& s, const Literal& l) {
  Literal out = l;
  for (Term& a : out.args) a = substitute(s, a);
  return out;
}

std::vector<Literal> substitute(const Substitution& s, const std::vector<Literal>& ls) {
  std::vector<Literal> out;
  out.reserve(ls.size());
  for (const Literal& l : ls) out.push_back(substitute(s, l));
  return out;
}

bool occurs_in(const std::string& var, const Term& t) {
  if (t.is_variable()) return t.name == var;
  for (const Term& a : t.args)
    if (occurs_in(var, a)) return true;
  return false;
}

namespace {

void extend_binding(Substitution& s, const std::string& var, const Term& value) {
  const Substitution single{{var, value}};
  for (auto& [_, bound] : s) bound = substitute(single, bound);
  s.emplace(var, value);
}

}  // namespace

std::optional<Substitution> unify(std::span<const Term> a, std::span<const Term> b) {
  if (a.size() != b.size()) return std::nullopt;
  Substitution s;
  std::vector<std::pair<Term, Term>> work;
  for (std::size_t i = a.size(); i-- > 0;) work.emplace_back(a[i], b[i]);
  while (!work.empty()) {
    auto [l, r] = std::move(work.back());
    work.pop_back();
    l = substitute(s, l);
    r = substitute(s, r);
    if (l == r) continue;
    if (r.is_variable()) {
      if (occurs_in(r.name, l)) return std::nullopt;
      extend_binding(s, r.name, l);
    } else if (l.is_variable()) {
      if (occurs_in(l.name, r)) return std::nullopt;
      extend_binding(s, l.name, r);
    } else {
      if (l.kind != r.kind || l.name != r.name || l.args.size() != r.args.size()) return std::nullopt;
      for (std::size_t i = l.args.size(); i-- > 0;) work.emplace_back(l.args[i], r.args[i]);
    }
  }
  return s;
}

namespace {

// "x_12" -> "x"; names without a numeric suffix are their own base.
std::string base_name(const std::string& v) {
  const std::size_t us = v.find('_');
  if (us == std::string::npos || us == 0 || us + 1 == v.size()) return v;
  for (std::size_t i = us + 1; i < v.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(v[i])) && v[i] != '_') return v;
  return v.substr(0, us);
}

std::string fresh_name(const std::string& v, const std::set<std::string>& taken) {
  const std::string base = base_name(v);
  for (std::size_t k = 1;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!taken.count(candidate)) return candidate;
  }
}

Clause rename(const Clause& c, const Substitution& s) {
  return Clause(substitute(s, c.literals()), c.origin());
}

// Drops rename suffixes whose base name is free again in the clause.
Clause tidy_variables(const Clause& c) {
  std::vector<std::string> order;
  for (const Literal& l : c.literals()) {
    std::vector<const Term*> stack;
    for (auto it = l.args.rbegin(); it != l.args.rend(); ++it) stack.push_back(&*it);
    while (!stack.empty()) {
      const Term* t = stack.back();
      stack.pop_back();
      if (t->is_variable()) {
        if (std::find(order.begin(), order.end(), t->name) == order.end()) order.push_back(t->name);
      }
      for (auto it = t->args.rbegin(); it != t->args.rend(); ++it) stack.push_back(&*it);
    }
  }
  std::set<std::string> taken(order.begin(), order.end());
  Substitution s;
  for (const std::string& v : order) {
    const std::string base = base_name(v);
    if (base == v || taken.count(base)) continue;
    taken.erase(v);
    taken.insert(base);
    s.emplace(v, Term::variable(base));
  }
  return s.empty() ? c : rename(c, s);
}

}  // namespace

std::pair<Clause, Clause> standardize_apart(const Clause& a, const Clause& b) {
  const std::set<std::string> va = a.variables();
  const std::set<std::string> vb = b.variables();
  std::set<std::string> taken = va;
  taken.insert(vb.begin(), vb.end());
  Substitution s;
  for (const std::string& v : vb) {
    if (!va.count(v)) continue;
    std::string fresh = fresh_name(v, taken);
    taken.insert(fresh);
    s.emplace(v, Term::variable(std::move(fresh)));
  }
  return {a, s.empty() ? b : rename(b, s)};
}

std::string_view to_string(ResolveOutcome::Kind k) {
  switch (k) {
    case ResolveOutcome::Kind::Resolvent: return "resolvent";
    case ResolveOutcome::Kind::Contradiction: return "contradiction";
    case ResolveOutcome::Kind::Tautology: return "tautology";
  }
  return "?";
}

ResolveOutcome resolve(const Clause& current, std::size_t current_pos, const Clause& complement,
                       std::size_t complement_pos) {
  if (current_pos >= current.size() || complement_pos >= complement.size())
    throw IllegalPair("pivot position out of range");
  auto [cur, comp] = standardize_apart(current, complement);
  const Literal& lp = cur[current_pos];
  const Literal& rp = comp[complement_pos];
  if (lp.predicate != rp.predicate || lp.arity() != rp.arity())
    throw IllegalPair("pivots differ in predicate: " + render_literal(lp) + " / " + render_literal(rp));
  if (lp.sign == rp.sign)
    throw IllegalPair("pivots have the same sign: " + render_literal(lp) + " / " + render_literal(rp));
  auto mgu = unify(lp.args, rp.args);
  if (!mgu) throw IllegalPair("pivots do not unify: " + render_literal(lp) + " / " + render_literal(rp));

  std::vector<Literal> rest;
  rest.reserve(cur.size() + comp.size() - 2);
  for (std::size_t i = 0; i < cur.size(); ++i)
    if (i != current_pos) rest.push_back(substitute(*mgu, cur[i]));
  for (std::size_t i = 0; i < comp.size(); ++i)
    if (i != complement_pos) rest.push_back(substitute(*mgu, comp[i]));

  ResolveOutcome out;
  out.mgu = std::move(*mgu);
  out.complement_renamed = std::move(comp);
  out.clause = tidy_variables(Clause(std::move(rest)));
  if (out.clause.empty()) {
    out.kind = ResolveOutcome::Kind::Contradiction;
  } else if (out.clause.tautology()) {
    out.kind = ResolveOutcome::Kind::Tautology;
  }
  return out;
}

}  // namespace refute
