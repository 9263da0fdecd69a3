#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "refute/ast.hpp"

namespace refute {

constexpr std::size_t kDefaultClauseCap = 4096;

class NonAtomicQuery : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ClauseBlowup : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hands out sk1, sk2, ... skipping names already used by the problem.
class SkolemCounter {
 public:
  explicit SkolemCounter(std::set<std::string> reserved = {}, std::string prefix = "sk");

  std::string next();

 private:
  std::set<std::string> reserved_;
  std::string prefix_;
  std::size_t next_id_ = 1;
};

// Rewrites →, ↔ and ⊕ into ∧, ∨, ¬.
Formula eliminate_connectives(const Formula& f);

// Pushes negation onto atoms (folded into the literal sign). Any remaining
// →, ↔, ⊕ are eliminated on the way.
Formula to_nnf(const Formula& f);

// Renames quantified variables so no two quantifiers bind the same name and
// none captures a free variable.
Formula standardize_bound_variables(const Formula& f);

// Replaces each ∃ with a skolem constant, or a skolem function of the
// enclosing universals, then drops the universals. Input must be NNF with
// bound variables standardized apart.
Formula skolemize_and_prenex(const Formula& nnf, SkolemCounter& sk);

// Distributes ∨ over ∧. Tautologies and clauses equal modulo renaming to an
// earlier one are dropped.
std::vector<Clause> to_cnf(const Formula& matrix, Origin origin = {},
                           std::size_t cap = kDefaultClauseCap);

// Intermediate forms of one formula, kept for --explain output.
struct DecomposeSteps {
  Formula nnf;
  Formula skolemized;
  std::vector<Clause> clauses;
};

struct Decomposition {
  std::vector<Clause> premises;  // P_n, origins carry the 1-based premise index
  Clause query;                  // S_n
  Clause negated_query;          // ¬S_n
  std::vector<DecomposeSteps> premise_steps;
  DecomposeSteps query_steps;
};

// Requires the query to reduce to a single unit clause, and so its negation.
Decomposition decompose(const std::vector<Formula>& premises, const Formula& query,
                        std::size_t cap = kDefaultClauseCap);

}  // namespace refute
