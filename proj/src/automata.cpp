#include "reosem/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <vector>

namespace reosem {

std::string format_transition(const Transition& t) {
  return "(" + t.source.display() + ", " + format_node_set(t.firing) + ", " +
         format_constraint(t.constraint) + ", " + t.target.display() + ")";
}

std::string CaValidationReport::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) out << "; ";
    out << violations[i];
  }
  return out.str();
}

ValidationReport validate_alpha_structure(const AlphaConnector& a) {
  ValidationReport report = validate_structure(a.structure);
  const ConstraintAutomaton& ca = a.automaton;

  if (!ca.states.count(ca.initial))
    report.violations.push_back("initial state " + ca.initial.display() +
                                " is not declared");
  for (const Transition& t : ca.transitions) {
    if (!ca.states.count(t.source))
      report.violations.push_back("transition " + format_transition(t) +
                                  " leaves undeclared state " + t.source.display());
    if (!ca.states.count(t.target))
      report.violations.push_back("transition " + format_transition(t) +
                                  " enters undeclared state " + t.target.display());
    for (const Node& n : t.firing) {
      if (!a.structure.nodes.count(n))
        report.violations.push_back("transition " + format_transition(t) +
                                    " fires undeclared node " + n.name());
    }
    for (const Node& n : free_nodes(t.constraint)) {
      if (!a.structure.nodes.count(n))
        report.violations.push_back("transition " + format_transition(t) +
                                    " constrains undeclared node " + n.name());
    }
  }
  return report;
}

namespace {

// Distinct transitions with the same source and firing set whose conjoined
// constraints are satisfiable over that firing set.
std::vector<std::pair<const Transition*, const Transition*>> overlapping_pairs(
    const ConstraintAutomaton& ca, const DataUniverse& u, std::uint64_t max_assignments) {
  std::map<std::pair<Index, std::set<Node>>, std::vector<const Transition*>> groups;
  for (const Transition& t : ca.transitions) groups[{t.source, t.firing}].push_back(&t);
  std::vector<std::pair<const Transition*, const Transition*>> out;
  for (const auto& [key, group] : groups) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        DataConstraint both =
            DataConstraint::conj(group[i]->constraint, group[j]->constraint);
        if (satisfiable(both, key.second, u, max_assignments))
          out.emplace_back(group[i], group[j]);
      }
    }
  }
  return out;
}

}  // namespace

bool is_deterministic(const ConstraintAutomaton& ca, const std::set<Node>& nodes,
                      const DataUniverse& u, std::uint64_t max_assignments) {
  (void)nodes;  // satisfiability runs over each firing set, not the node set
  return overlapping_pairs(ca, u, max_assignments).empty();
}

CaValidationReport validate_ca(const AlphaConnector& a, const DataUniverse& u,
                               std::uint64_t max_assignments) {
  CaValidationReport report;
  report.violations = validate_alpha_structure(a).violations;

  for (const Transition& t : a.automaton.transitions) {
    // Every atom item must come from the declared universe.
    std::deque<DataConstraint> todo{t.constraint};
    while (!todo.empty()) {
      DataConstraint g = todo.front();
      todo.pop_front();
      switch (g.kind()) {
        case DataConstraint::Kind::Top:
          break;
        case DataConstraint::Kind::Atom:
          if (!u.contains(g.atom_item()))
            report.violations.push_back("transition " + format_transition(t) +
                                        " mentions item \"" + g.atom_item() +
                                        "\" outside the universe");
          break;
        case DataConstraint::Kind::Neg:
          todo.push_back(g.body());
          break;
        case DataConstraint::Kind::Conj:
          todo.push_back(g.left());
          todo.push_back(g.right());
          break;
      }
    }
  }

  for (const auto& [first, second] : overlapping_pairs(a.automaton, u, max_assignments)) {
    report.deterministic = false;
    report.violations.push_back("nondeterministic pair: " + format_transition(*first) +
                                " overlaps " + format_transition(*second));
  }
  return report;
}

ConstraintAutomaton compose_ca(const ConstraintAutomaton& a1,
                               const ConstraintAutomaton& a2,
                               const std::set<Node>& n1, const std::set<Node>& n2) {
  ConstraintAutomaton out{{}, {}, Index::pair(a1.initial, a2.initial)};
  for (const Index& q1 : a1.states) {
    for (const Index& q2 : a2.states) out.states.insert(Index::pair(q1, q2));
  }
  auto intersect = [](const std::set<Node>& f, const std::set<Node>& n) {
    std::set<Node> out;
    for (const Node& x : f) {
      if (n.count(x)) out.insert(x);
    }
    return out;
  };
  for (const Transition& t1 : a1.transitions) {
    for (const Transition& t2 : a2.transitions) {
      // Shared nodes must fire on both sides or on neither.
      if (intersect(t1.firing, n2) != intersect(t2.firing, n1)) continue;
      std::set<Node> firing = t1.firing;
      firing.insert(t2.firing.begin(), t2.firing.end());
      out.transitions.insert(Transition{
          Index::pair(t1.source, t2.source), std::move(firing),
          DataConstraint::conj(t1.constraint, t2.constraint),
          Index::pair(t1.target, t2.target)});
    }
  }
  return out;
}

AlphaConnector compose_alpha_connectors(const AlphaConnector& a1,
                                        const AlphaConnector& a2) {
  return AlphaConnector{
      compose_structures(a1.structure, a2.structure),
      compose_ca(a1.automaton, a2.automaton, a1.structure.nodes, a2.structure.nodes)};
}

ConstraintAutomaton prune_unreachable(const ConstraintAutomaton& ca) {
  std::set<Index> reachable{ca.initial};
  std::deque<Index> todo{ca.initial};
  std::multimap<Index, const Transition*> by_source;
  for (const Transition& t : ca.transitions) by_source.emplace(t.source, &t);
  while (!todo.empty()) {
    Index q = todo.front();
    todo.pop_front();
    auto [lo, hi] = by_source.equal_range(q);
    for (auto it = lo; it != hi; ++it) {
      if (reachable.insert(it->second->target).second) todo.push_back(it->second->target);
    }
  }
  ConstraintAutomaton out{std::move(reachable), {}, ca.initial};
  for (const Transition& t : ca.transitions) {
    if (out.states.count(t.source)) out.transitions.insert(t);
  }
  return out;
}

}  // namespace reosem
