#include "refute/search.hpp"

#include <algorithm>
#include <tuple>

namespace refute {

std::size_t ClauseIndex::add(Clause c) {
  const std::size_t id = clauses_.size();
  auto stored = std::make_shared<const Clause>(std::move(c));
  clauses_.push_back({stored, id});
  const std::size_t len = stored->size();
  auto key_of = [this](const Entry& e) {
    return std::make_tuple(clauses_[e.clause_id].clause->size(), clauses_[e.clause_id].rank,
                           e.literal_pos);
  };
  for (std::size_t pos = 0; pos < stored->size(); ++pos) {
    const Literal& l = (*stored)[pos];
    auto& bucket = buckets_[{l.predicate, l.sign}];
    const Entry e{id, pos};
    const auto key = std::make_tuple(len, id, pos);
    auto at = std::upper_bound(bucket.begin(), bucket.end(), key,
                               [&](const auto& k, const Entry& other) { return k < key_of(other); });
    bucket.insert(at, e);
  }
  return id;
}

const std::vector<ClauseIndex::Entry>& ClauseIndex::bucket(const std::string& predicate,
                                                           Sign sign) const {
  static const std::vector<Entry> kEmpty;
  auto it = buckets_.find({predicate, sign});
  return it == buckets_.end() ? kEmpty : it->second;
}

std::size_t ClauseIndex::entry_count() const {
  std::size_t n = 0;
  for (const auto& [_, b] : buckets_) n += b.size();
  return n;
}

ClauseIndex build_index(const std::vector<Clause>& clauses) {
  ClauseIndex idx;
  for (const Clause& c : clauses) idx.add(c);
  return idx;
}

std::vector<Candidate> find_complements(const Clause& c, const ClauseIndex& idx) {
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Literal& l = c[i];
    for (const ClauseIndex::Entry& e : idx.bucket(l.predicate, flip(l.sign))) {
      const ClauseIndex::Stored& s = idx.at(e.clause_id);
      if ((*s.clause)[e.literal_pos].arity() != l.arity()) continue;
      auto [cur, other] = standardize_apart(c, *s.clause);
      auto mgu = unify(cur[i].args, other[e.literal_pos].args);
      if (!mgu) continue;
      Candidate cand;
      cand.clause_id = e.clause_id;
      cand.clause = s.clause;
      cand.current_pos = i;
      cand.complement_pos = e.literal_pos;
      cand.mgu = std::move(*mgu);
      cand.length = s.clause->size();
      cand.rank = s.rank;
      out.push_back(std::move(cand));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.length, a.rank, a.current_pos, a.complement_pos) <
           std::tie(b.length, b.rank, b.current_pos, b.complement_pos);
  });
  return out;
}

bool VisitedSet::contains(const Clause& c) const {
  auto it = by_shape_.find(clause_shape_key(c));
  if (it == by_shape_.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](const Clause& o) { return clause_equal_mod_renaming(o, c); });
}

bool VisitedSet::insert(const Clause& c) {
  auto& bucket = by_shape_[clause_shape_key(c)];
  for (const Clause& o : bucket)
    if (clause_equal_mod_renaming(o, c)) return false;
  bucket.push_back(c);
  ++size_;
  return true;
}

std::optional<Candidate> next_candidate(ProofState& state) {
  state.resumed = false;
  if (!state.dead_end) {
    std::vector<Candidate> found = find_complements(state.current, state.index);
    state.candidates_examined += found.size();
    state.last_list_size = found.size();
    if (found.size() == 1) return std::move(found.front());
    if (found.size() > 1) {
      Backup b{state.snapshot(), {}};
      b.remaining.assign(std::make_move_iterator(found.begin() + 1),
                         std::make_move_iterator(found.end()));
      state.backups.push(std::move(b));
      return std::move(found.front());
    }
  }
  while (!state.backups.empty()) {
    Backup& top = state.backups.top();
    if (top.remaining.empty()) {
      state.backups.pop();
      continue;
    }
    Candidate c = std::move(top.remaining.front());
    top.remaining.pop_front();
    state.current = top.snapshot.current;
    state.depth = top.snapshot.depth;
    state.last_list_size = top.remaining.size() + 1;
    if (top.remaining.empty()) state.backups.pop();
    state.dead_end = false;
    state.resumed = true;
    ++state.backtracks;
    return c;
  }
  return std::nullopt;
}

}  // namespace refute
