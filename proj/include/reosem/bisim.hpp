#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "reosem/automata.hpp"
#include "reosem/coloring.hpp"

namespace reosem {

// How transition constraints are matched against next-entry constraints.
// Syntactic means structural AST equality; Semantic means agreement on all
// partial assignments over the shared node set.
enum class MatchMode { Syntactic, Semantic };

// Relation between automaton states and coloring-model indexes.
struct BisimRelation {
  std::set<std::pair<Index, Index>> pairs;

  bool contains(const Index& q, const Index& i) const {
    return pairs.count({q, i}) != 0;
  }

  bool operator==(const BisimRelation&) const = default;
};

struct BisimVerdict {
  bool bisimilar = false;
  // The greatest bisimulation, when bisimilar.
  BisimRelation witness;
  // The pair of initial indexes and the concrete unmatched transition or
  // next entry that disqualified it, when not bisimilar.
  std::optional<std::pair<Index, Index>> culprit;
  std::string reason;
};

// Greatest-fixed-point check between an automaton and a coloring model over
// the same node set (else throws Error). Starts from all state/index pairs
// and deletes pairs with an unmatched transition or next entry until stable;
// the verdict is decided by the pair of initials. Deletion order cannot
// change the result. Semantic mode may throw ResourceLimit.
BisimVerdict check_bisim(const AlphaConnector& a, const EpsilonConnector& e,
                         MatchMode mode, const DataUniverse& u,
                         std::uint64_t max_assignments = kDefaultMaxAssignments);

// True iff r contains the pair of initials and every pair in r has all its
// transitions and next entries matched within r.
bool verify_relation(const AlphaConnector& a, const EpsilonConnector& e,
                     const BisimRelation& r, MatchMode mode, const DataUniverse& u,
                     std::uint64_t max_assignments = kDefaultMaxAssignments);

}  // namespace reosem
