#include "refute/oracle.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>

#include "refute/resolver.hpp"

namespace refute {

std::size_t GroundProblem::atom_id(const Literal& l) const {
  Literal pos = l;
  pos.sign = Sign::Positive;
  auto it = std::find(atoms.begin(), atoms.end(), pos);
  return it == atoms.end() ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(it - atoms.begin());
}

namespace {

void constants_of(const Term& t, std::vector<std::string>& out) {
  if (t.is_constant() && std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
  for (const Term& a : t.args) constants_of(a, out);
}

class AtomTable {
 public:
  explicit AtomTable(std::size_t cap) : cap_(cap) {}

  std::size_t id(const Literal& l) {
    Literal pos = l;
    pos.sign = Sign::Positive;
    auto [it, inserted] = ids_.emplace(pos, atoms_.size());
    if (inserted) {
      atoms_.push_back(pos);
      if (atoms_.size() > cap_)
        throw AtomCapExceeded("ground atom count exceeds cap of " + std::to_string(cap_));
    }
    return it->second;
  }

  std::vector<Literal> release() { return std::move(atoms_); }
  std::size_t size() const { return atoms_.size(); }

 private:
  std::size_t cap_;
  std::map<Literal, std::size_t> ids_;
  std::vector<Literal> atoms_;
};

std::vector<std::vector<GroundLiteral>> ground_into(const std::vector<Clause>& clauses,
                                                    const std::vector<std::string>& constants,
                                                    AtomTable& table) {
  std::vector<std::vector<GroundLiteral>> out;
  for (const Clause& c : clauses) {
    if (c.has_functions()) throw OracleExempt("clause has function terms: " + render_clause(c));
    const std::set<std::string> var_set = c.variables();
    const std::vector<std::string> vars(var_set.begin(), var_set.end());
    std::vector<std::size_t> choice(vars.size(), 0);
    for (;;) {
      Substitution s;
      for (std::size_t i = 0; i < vars.size(); ++i) s.emplace(vars[i], Term::constant(constants[choice[i]]));
      std::vector<GroundLiteral> g;
      for (const Literal& l : c.literals()) g.push_back({table.id(substitute(s, l)), l.positive()});
      std::sort(g.begin(), g.end());
      g.erase(std::unique(g.begin(), g.end()), g.end());
      bool taut = false;
      for (std::size_t i = 0; i + 1 < g.size(); ++i) taut = taut || g[i].atom == g[i + 1].atom;
      if (!taut) out.push_back(std::move(g));
      // odometer over constant choices
      std::size_t k = 0;
      while (k < choice.size() && ++choice[k] == constants.size()) choice[k++] = 0;
      if (k == choice.size()) break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Bit k of lane_pattern[a] is bit a of k, for the six atoms that vary
// inside one 64-bit word.
constexpr std::array<std::uint64_t, 6> kLanePattern{
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

std::uint64_t atom_word(std::size_t atom, std::uint64_t block) {
  if (atom < 6) return kLanePattern[atom];
  return ((block >> (atom - 6)) & 1u) ? ~0ull : 0ull;
}

// True iff no assignment over n atoms satisfies all clauses plus `extra`.
bool unsatisfiable(std::size_t n, const std::vector<std::vector<GroundLiteral>>& clauses,
                   const std::optional<GroundLiteral>& extra) {
  const std::uint64_t blocks = n > 6 ? (1ull << (n - 6)) : 1ull;
  const std::uint64_t valid = n >= 6 ? ~0ull : ((1ull << (1u << n)) - 1);
  for (std::uint64_t block = 0; block < blocks; ++block) {
    std::uint64_t models = valid;
    if (extra) {
      const std::uint64_t ew = atom_word(extra->atom, block);
      models &= extra->positive ? ew : ~ew;
    }
    for (const auto& clause : clauses) {
      if (!models) break;
      std::uint64_t cw = 0;
      for (const GroundLiteral& l : clause) {
        const std::uint64_t w = atom_word(l.atom, block);
        cw |= l.positive ? w : ~w;
      }
      models &= cw;
    }
    if (models) return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> collect_constants(const std::vector<Clause>& clauses) {
  std::vector<std::string> out;
  for (const Clause& c : clauses)
    for (const Literal& l : c.literals())
      for (const Term& t : l.args) constants_of(t, out);
  if (out.empty()) out.push_back("Dummy");
  return out;
}

GroundProblem ground(const std::vector<Clause>& clauses, const std::vector<std::string>& constants,
                     std::size_t atom_cap) {
  if (constants.empty()) throw std::invalid_argument("ground: empty constant pool");
  AtomTable table(atom_cap);
  GroundProblem out;
  out.clauses = ground_into(clauses, constants, table);
  out.atoms = table.release();
  out.constants = constants;
  return out;
}

bool entails(const std::vector<Clause>& premises, const Clause& unit,
             const std::vector<std::string>& constants, std::size_t atom_cap) {
  if (!unit.unit() || !unit.ground()) throw std::invalid_argument("entails: query must be a ground unit clause");
  if (unit.has_functions()) throw OracleExempt("query has function terms");
  if (constants.empty()) throw std::invalid_argument("entails: empty constant pool");
  AtomTable table(atom_cap);
  auto clauses = ground_into(premises, constants, table);
  const GroundLiteral negated_goal{table.id(unit[0]), !unit[0].positive()};
  return unsatisfiable(table.size(), clauses, negated_goal);
}

bool satisfiable(const std::vector<Clause>& clauses, const std::vector<std::string>& constants,
                 std::size_t atom_cap) {
  if (constants.empty()) throw std::invalid_argument("satisfiable: empty constant pool");
  AtomTable table(atom_cap);
  auto ground_clauses = ground_into(clauses, constants, table);
  return !unsatisfiable(table.size(), ground_clauses, std::nullopt);
}

Answer oracle_answer(const std::vector<Clause>& premises, const Clause& query_unit,
                     const std::vector<std::string>& constants, std::size_t atom_cap) {
  const bool proves_s = entails(premises, query_unit, constants, atom_cap);
  Clause neg({query_unit[0].negated()});
  const bool proves_not_s = entails(premises, neg, constants, atom_cap);
  if (proves_s && !proves_not_s) return Answer::True;
  if (!proves_s && proves_not_s) return Answer::False;
  if (!proves_s && !proves_not_s) return Answer::Unknown;
  return Answer::SelfContradictory;
}

Answer oracle_answer(const Decomposition& d, std::size_t atom_cap) {
  std::vector<Clause> all = d.premises;
  all.push_back(d.query);
  return oracle_answer(d.premises, d.query, collect_constants(all), atom_cap);
}

bool oracle_exempt(const Decomposition& d) {
  if (d.query.has_functions() || d.negated_query.has_functions()) return true;
  return std::any_of(d.premises.begin(), d.premises.end(),
                     [](const Clause& c) { return c.has_functions(); });
}

}  // namespace refute
