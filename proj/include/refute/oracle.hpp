#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "refute/ast.hpp"
#include "refute/decomposer.hpp"

namespace refute {

// Brute-force entailment for function-free clause sets: ground over the
// constants, then enumerate every truth assignment of the ground atoms.

constexpr std::size_t kDefaultAtomCap = 24;

class AtomCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown for clause sets with function terms (e.g. skolem functions).
class OracleExempt : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroundLiteral {
  std::size_t atom;
  bool positive;

  friend auto operator<=>(const GroundLiteral&, const GroundLiteral&) = default;
};

struct GroundProblem {
  std::vector<Literal> atoms;  // positive ground atoms, index = atom id
  std::vector<std::vector<GroundLiteral>> clauses;
  std::vector<std::string> constants;

  std::size_t atom_id(const Literal& l) const;  // npos if absent
};

// Constants of the clauses in first-seen order; "Dummy" if there are none.
std::vector<std::string> collect_constants(const std::vector<Clause>& clauses);

GroundProblem ground(const std::vector<Clause>& clauses, const std::vector<std::string>& constants,
                     std::size_t atom_cap = kDefaultAtomCap);

// Every model of the premises satisfies the ground unit clause. Unsatisfiable
// premises entail everything.
bool entails(const std::vector<Clause>& premises, const Clause& unit,
             const std::vector<std::string>& constants, std::size_t atom_cap = kDefaultAtomCap);

bool satisfiable(const std::vector<Clause>& clauses, const std::vector<std::string>& constants,
                 std::size_t atom_cap = kDefaultAtomCap);

Answer oracle_answer(const std::vector<Clause>& premises, const Clause& query_unit,
                     const std::vector<std::string>& constants,
                     std::size_t atom_cap = kDefaultAtomCap);

// Uses S_n from the decomposition and the constants of P_n and S_n.
Answer oracle_answer(const Decomposition& d, std::size_t atom_cap = kDefaultAtomCap);

bool oracle_exempt(const Decomposition& d);

}  // namespace refute
