#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "refute/ast.hpp"
#include "refute/resolver.hpp"

namespace refute {

// {{{ Clause index

// Stores P_n plus clauses appended during a proof, with literal buckets keyed
// by (predicate, sign). Bucket order: clause length, then rank, then literal
// position. Rank is insertion order, so appended clauses rank after premises.
class ClauseIndex {
 public:
  struct Stored {
    std::shared_ptr<const Clause> clause;
    std::size_t rank;
  };

  struct Entry {
    std::size_t clause_id;
    std::size_t literal_pos;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  ClauseIndex() = default;

  std::size_t add(Clause c);

  std::size_t size() const { return clauses_.size(); }
  const Stored& at(std::size_t id) const { return clauses_.at(id); }
  const std::vector<Entry>& bucket(const std::string& predicate, Sign sign) const;
  std::size_t bucket_count() const { return buckets_.size(); }
  // Total entries across buckets; equals the literal count of stored clauses.
  std::size_t entry_count() const;

 private:
  std::vector<Stored> clauses_;
  std::map<std::pair<std::string, Sign>, std::vector<Entry>> buckets_;
};

ClauseIndex build_index(const std::vector<Clause>& clauses);

// }}}

// {{{ Complement search

struct Candidate {
  std::size_t clause_id = 0;
  std::shared_ptr<const Clause> clause;
  std::size_t current_pos = 0;
  std::size_t complement_pos = 0;
  Substitution mgu;  // unifies the pivots after standardize-apart
  std::size_t length = 0;
  std::size_t rank = 0;
};

// Every (literal of c, stored literal) pair with equal predicate and arity,
// opposite sign and unifiable arguments. Ordered by clause length, rank,
// position in c, position in the stored clause.
std::vector<Candidate> find_complements(const Clause& c, const ClauseIndex& idx);

// }}}

// {{{ Proof state and backtracking

// One resolution step as it appears in traces.
struct StepRecord {
  std::size_t step = 0;  // 1-based
  Clause current;
  Clause complement;  // as stored in the index, origin intact
  std::size_t current_pivot = 0;
  std::size_t complement_pivot = 0;
  Substitution mgu;
  ResolveOutcome::Kind outcome = ResolveOutcome::Kind::Resolvent;
  Clause resolvent;
  std::size_t candidates = 0;  // size of the candidate list this step drew from
  bool backtracked = false;    // candidate came from the backup stack
  bool revisited = false;      // resolvent already derived on this path
};

struct Snapshot {
  Clause current;
  std::size_t depth = 0;
  std::size_t trace_length = 0;
};

struct Backup {
  Snapshot snapshot;
  std::deque<Candidate> remaining;
};

class BackupStack {
 public:
  void push(Backup b) { stack_.push_back(std::move(b)); }
  Backup& top() { return stack_.back(); }
  void pop() { stack_.pop_back(); }
  bool empty() const { return stack_.empty(); }
  std::size_t size() const { return stack_.size(); }

 private:
  std::vector<Backup> stack_;
};

// Clauses already seen on one path, compared modulo variable renaming.
class VisitedSet {
 public:
  bool contains(const Clause& c) const;
  // Returns false if an equal clause was already present.
  bool insert(const Clause& c);
  std::size_t size() const { return size_; }

 private:
  std::unordered_map<std::string, std::vector<Clause>> by_shape_;
  std::size_t size_ = 0;
};

struct ProofState {
  PathKind path = PathKind::FromS;
  Clause current;
  std::size_t iteration = 0;  // resolve calls so far; never reset
  std::size_t depth = 0;      // resolvents on the current branch
  ClauseIndex index;          // private to this path
  BackupStack backups;
  std::vector<StepRecord> trace;
  VisitedSet visited;
  bool dead_end = false;  // current clause must not be expanded further
  bool resumed = false;   // last candidate came from a backup
  std::size_t candidates_examined = 0;
  std::size_t backtracks = 0;
  std::size_t last_list_size = 0;

  Snapshot snapshot() const { return Snapshot{current, depth, trace.size()}; }
};

// One search decision:
//   exactly one complement -> use it;
//   several -> use the first, stash the rest with a snapshot;
//   none (or a dead end) -> restore the newest backup and take its next
//   candidate; nothing left -> nullopt ("no contradiction found").
std::optional<Candidate> next_candidate(ProofState& state);

// }}}

}  // namespace refute
