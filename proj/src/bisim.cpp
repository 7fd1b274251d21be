#include "reosem/bisim.hpp"

#include <map>
#include <vector>

namespace reosem {

namespace {

struct NextEntry {
  std::set<Node> flow;
  DataConstraint constraint;
  const ConstraintColoring* coloring;
  Index target;
};

// Matching machinery shared by the checker and the verifier. Transitions
// and next entries are pre-grouped per state/index and per flow set, so a
// match candidate scan only touches entries with the right firing behavior.
class Matcher {
 public:
  Matcher(const AlphaConnector& a, const EpsilonConnector& e, MatchMode mode,
          const DataUniverse& u, std::uint64_t max_assignments)
      : mode_(mode), u_(u), max_assignments_(max_assignments), nodes_(a.structure.nodes) {
    for (const Transition& t : a.automaton.transitions)
      trans_[t.source][t.firing].push_back(&t);
    for (const auto& [key, target] : e.behavior.next) {
      const auto& [index, x] = key;
      entries_[index][flow_set(x.coloring)].push_back(
          NextEntry{flow_set(x.coloring), x.constraint, &x, target});
    }
  }

  const std::map<std::set<Node>, std::vector<const Transition*>>& transitions_from(
      const Index& q) const {
    static const std::map<std::set<Node>, std::vector<const Transition*>> empty;
    auto it = trans_.find(q);
    return it == trans_.end() ? empty : it->second;
  }

  const std::map<std::set<Node>, std::vector<NextEntry>>& entries_at(const Index& i) const {
    static const std::map<std::set<Node>, std::vector<NextEntry>> empty;
    auto it = entries_.find(i);
    return it == entries_.end() ? empty : it->second;
  }

  bool constraints_match(const DataConstraint& g1, const DataConstraint& g2) {
    if (g1 == g2) return true;
    if (mode_ == MatchMode::Syntactic) return false;
    auto key = g1 < g2 ? std::make_pair(g1, g2) : std::make_pair(g2, g1);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    bool eq = equivalent(g1, g2, nodes_, u_, max_assignments_);
    cache_.emplace(std::move(key), eq);
    return eq;
  }

  // Some next entry at i matches the transition and lands in a pair of
  // `related`. Null related means "any successor".
  template <typename Related>
  bool transition_matched(const Transition& t, const Index& i, const Related& related) {
    auto& groups = entries_at(i);
    auto it = groups.find(t.firing);
    if (it == groups.end()) return false;
    for (const NextEntry& entry : it->second) {
      if (constraints_match(t.constraint, entry.constraint) &&
          related(t.target, entry.target))
        return true;
    }
    return false;
  }

  template <typename Related>
  bool entry_matched(const NextEntry& entry, const Index& q, const Related& related) {
    auto& groups = transitions_from(q);
    auto it = groups.find(entry.flow);
    if (it == groups.end()) return false;
    for (const Transition* t : it->second) {
      if (constraints_match(t->constraint, entry.constraint) &&
          related(t->target, entry.target))
        return true;
    }
    return false;
  }

 private:
  MatchMode mode_;
  const DataUniverse& u_;
  std::uint64_t max_assignments_;
  std::set<Node> nodes_;
  std::map<Index, std::map<std::set<Node>, std::vector<const Transition*>>> trans_;
  std::map<Index, std::map<std::set<Node>, std::vector<NextEntry>>> entries_;
  std::map<std::pair<DataConstraint, DataConstraint>, bool> cache_;
};

}  // namespace

BisimVerdict check_bisim(const AlphaConnector& a, const EpsilonConnector& e,
                         MatchMode mode, const DataUniverse& u,
                         std::uint64_t max_assignments) {
  if (a.structure.nodes != e.structure.nodes)
    throw Error("bisimilarity needs one node set; got " +
                format_node_set(a.structure.nodes) + " vs " +
                format_node_set(e.structure.nodes));

  Matcher matcher(a, e, mode, u, max_assignments);

  std::set<std::pair<Index, Index>> alive;
  for (const Index& q : a.automaton.states) {
    for (const Index& i : e.behavior.ctm.indexes) alive.insert({q, i});
  }
  auto related = [&alive](const Index& q, const Index& i) {
    return alive.count({q, i}) != 0;
  };

  const std::pair<Index, Index> initials{a.automaton.initial, e.behavior.initial};
  std::string initial_reason;

  // Delete violating pairs until stable. The survivors are the greatest
  // bisimulation regardless of deletion order.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = alive.begin(); it != alive.end();) {
      const auto& [q, i] = *it;
      std::string reason;
      for (const auto& [firing, group] : matcher.transitions_from(q)) {
        for (const Transition* t : group) {
          if (!matcher.transition_matched(*t, i, related)) {
            reason = "transition " + format_transition(*t) + " has no match at index " +
                     i.display();
            break;
          }
        }
        if (!reason.empty()) break;
      }
      if (reason.empty()) {
        for (const auto& [flow, group] : matcher.entries_at(i)) {
          for (const NextEntry& entry : group) {
            if (!matcher.entry_matched(entry, q, related)) {
              reason = "next entry (" + i.display() + ", " +
                       format_constraint_coloring(*entry.coloring) + ") -> " +
                       entry.target.display() + " has no match at state " + q.display();
              break;
            }
          }
          if (!reason.empty()) break;
        }
      }
      if (reason.empty()) {
        ++it;
        continue;
      }
      if (*it == initials) initial_reason = reason;
      it = alive.erase(it);
      changed = true;
    }
  }

  BisimVerdict verdict;
  if (alive.count(initials)) {
    verdict.bisimilar = true;
    verdict.witness.pairs = std::move(alive);
  } else {
    verdict.bisimilar = false;
    verdict.culprit = initials;
    verdict.reason = initial_reason;
  }
  return verdict;
}

bool verify_relation(const AlphaConnector& a, const EpsilonConnector& e,
                     const BisimRelation& r, MatchMode mode, const DataUniverse& u,
                     std::uint64_t max_assignments) {
  if (a.structure.nodes != e.structure.nodes)
    throw Error("bisimilarity needs one node set; got " +
                format_node_set(a.structure.nodes) + " vs " +
                format_node_set(e.structure.nodes));
  if (!r.contains(a.automaton.initial, e.behavior.initial)) return false;

  Matcher matcher(a, e, mode, u, max_assignments);
  auto related = [&r](const Index& q, const Index& i) { return r.contains(q, i); };

  for (const auto& [q, i] : r.pairs) {
    for (const auto& [firing, group] : matcher.transitions_from(q)) {
      for (const Transition* t : group) {
        if (!matcher.transition_matched(*t, i, related)) return false;
      }
    }
    for (const auto& [flow, group] : matcher.entries_at(i)) {
      for (const NextEntry& entry : group) {
        if (!matcher.entry_matched(entry, q, related)) return false;
      }
    }
  }
  return true;
}

}  // namespace reosem
