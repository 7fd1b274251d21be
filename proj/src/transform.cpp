#include "reosem/transform.hpp"

#include "reosem/errors.hpp"

namespace reosem {

AlphaConnector l_transform(const EpsilonConnector& e) {
  ValidationReport report = validate_epsilon(e);
  if (!report.ok())
    throw ValidationError("l_transform requires a valid coloring model: " +
                          report.to_string());

  AlphaConnector out{e.structure,
                     ConstraintAutomaton{e.behavior.ctm.indexes, {}, e.behavior.initial}};
  for (const auto& [key, target] : e.behavior.next) {
    const auto& [index, x] = key;
    out.automaton.transitions.insert(
        Transition{index, flow_set(x.coloring), x.constraint, target});
  }
  return out;
}

EpsilonConnector inv_l_transform(const AlphaConnector& a) {
  ValidationReport report = validate_alpha_structure(a);
  if (!report.ok())
    throw ValidationError("inv_l_transform requires a valid automaton: " +
                          report.to_string());

  EpsilonConnector out{
      a.structure,
      InitializedNextFunction{
          ConstraintCtm{a.structure.nodes, a.automaton.states, {}}, {}, a.automaton.initial}};
  for (const Index& q : a.automaton.states) out.behavior.ctm.table.emplace(q, std::set<ConstraintColoring>{});
  for (const Transition& t : a.automaton.transitions) {
    ConstraintColoring x{coloring_from_flow_set(a.structure.nodes, t.firing), t.constraint};
    auto key = std::make_pair(t.source, std::move(x));
    auto [it, inserted] = out.behavior.next.emplace(key, t.target);
    if (!inserted && !(it->second == t.target)) {
      // Two transitions with one next key and different targets cannot be
      // a function; reject instead of merging.
      throw NondeterminismError(
          "transitions " +
          format_transition(Transition{t.source, t.firing, t.constraint, it->second}) +
          " and " + format_transition(t) + " collide on one next entry");
    }
    out.behavior.ctm.table.at(t.source).insert(key.second);
  }
  return out;
}

}  // namespace reosem
