#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "refute/ast.hpp"

namespace refute {

// Variable name -> term. Kept idempotent: no bound variable occurs in any
// binding's right-hand side.
using Substitution = std::map<std::string, Term>;

Term substitute(const Substitution& s, const Term& t);
Literal substitute(const Substitution& s, const Literal& l);
std::vector<Literal> substitute(const Substitution& s, const std::vector<Literal>& ls);

bool occurs_in(const std::string& var, const Term& t);

// Most general unifier of two equal-length term lists, with occurs check.
// Variable-variable pairs bind the right-hand side's variable.
std::optional<Substitution> unify(std::span<const Term> a, std::span<const Term> b);

// Renames variables of b that also occur in a (x -> x_1, x_2, ...). a is
// returned unchanged.
std::pair<Clause, Clause> standardize_apart(const Clause& a, const Clause& b);

class IllegalPair : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ResolveOutcome {
  enum class Kind { Resolvent, Contradiction, Tautology };

  Kind kind = Kind::Resolvent;
  Clause clause;                // empty for Contradiction
  Substitution mgu;
  Clause complement_renamed;    // the complement after standardize-apart
};

std::string_view to_string(ResolveOutcome::Kind k);

// Binary resolution on current[current_pos] and complement[complement_pos].
// The resolvent lists current's remaining literals first, then the
// complement's, under the mgu, with duplicates merged.
ResolveOutcome resolve(const Clause& current, std::size_t current_pos, const Clause& complement,
                       std::size_t complement_pos);

}  // namespace refute
