#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "reosem/coloring.hpp"
#include "reosem/constraints.hpp"
#include "reosem/core.hpp"

namespace reosem {

// One step: from `source`, the nodes in `firing` flow simultaneously with
// data satisfying `constraint`, landing in `target`. Idle steps are stored
// explicitly as (q, {}, top, q); nothing is implicit.
struct Transition {
  Index source;
  std::set<Node> firing;
  DataConstraint constraint;
  Index target;

  auto operator<=>(const Transition&) const = default;
};

struct ConstraintAutomaton {
  std::set<Index> states;
  std::set<Transition> transitions;
  Index initial;

  bool operator==(const ConstraintAutomaton&) const = default;
};

// Connector structure plus automaton behavior over the same node set.
struct AlphaConnector {
  ConnectorStructure structure;
  ConstraintAutomaton automaton;

  bool operator==(const AlphaConnector&) const = default;
};

// Universe-free checks: structure validity, endpoints and the initial state
// declared, firing sets and constraint free nodes inside the node set.
ValidationReport validate_alpha_structure(const AlphaConnector& a);

struct CaValidationReport {
  std::vector<std::string> violations;
  bool deterministic = true;

  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

// Structural checks plus: every atom's item is in u, and determinism.
// A nondeterministic pair is reported as a violation and clears the flag.
CaValidationReport validate_ca(const AlphaConnector& a, const DataUniverse& u,
                               std::uint64_t max_assignments = kDefaultMaxAssignments);

// Deterministic iff for every two distinct transitions out of one state
// with equal firing sets, the conjunction of their constraints is
// unsatisfiable over that firing set.
bool is_deterministic(const ConstraintAutomaton& ca, const std::set<Node>& nodes,
                      const DataUniverse& u,
                      std::uint64_t max_assignments = kDefaultMaxAssignments);

// Product over the given node sets: states pair up, and transitions
// (q1,F1,g1,q1') and (q2,F2,g2,q2') join iff F1 ∩ n2 = F2 ∩ n1, labeled
// (F1 ∪ F2, g1 ∧ g2). No reachability pruning.
ConstraintAutomaton compose_ca(const ConstraintAutomaton& a1,
                               const ConstraintAutomaton& a2,
                               const std::set<Node>& n1, const std::set<Node>& n2);

// Composes structure (which may throw IncompatibleStructures) and automata.
AlphaConnector compose_alpha_connectors(const AlphaConnector& a1,
                                        const AlphaConnector& a2);

// Drops states unreachable from the initial state and their transitions.
// A display aid; no operation in this library applies it implicitly.
ConstraintAutomaton prune_unreachable(const ConstraintAutomaton& ca);

std::string format_transition(const Transition& t);

}  // namespace reosem
