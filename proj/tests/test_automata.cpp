#include "doctest.h"

#include "reosem/automata.hpp"
#include "reosem/primitives.hpp"
#include "reosem/transform.hpp"

using namespace reosem;

namespace {

const Node A{"A"};
const Node B{"B"};
const Node C{"C"};
const Node M{"M"};

DataConstraint atom(const Node& n, const std::string& d) {
  return DataConstraint::atom(n, d);
}

const DataConstraint top = DataConstraint::top();

// One-state automaton over a single channel, with an idle loop.
AlphaConnector tiny_channel(const Node& from, const Node& to, DataConstraint g) {
  Index q = Index::atom("Chan", "c");
  return AlphaConnector{
      ConnectorStructure{{from, to}, {{from, to}}},
      ConstraintAutomaton{{q},
                          {Transition{q, {from, to}, std::move(g), q},
                           Transition{q, {}, top, q}},
                          q}};
}

}  // namespace

TEST_CASE("transitions format for humans") {
  Transition t{Index::atom("Q", "i"), {A}, atom(A, "foo"), Index::atom("R", "i")};
  CHECK(format_transition(t) == "(Q(i), {A}, A==\"foo\", R(i))");
}

TEST_CASE("structure validation catches undeclared pieces") {
  DataUniverse u{{"foo"}};
  AlphaConnector good = tiny_channel(A, B, atom(A, "foo"));
  CHECK(validate_alpha_structure(good).ok());
  CHECK(validate_ca(good, u).ok());

  SUBCASE("transition endpoint not in the state set") {
    AlphaConnector bad = good;
    bad.automaton.transitions.insert(
        Transition{Index::atom("Ghost", "g"), {}, top, bad.automaton.initial});
    ValidationReport r = validate_alpha_structure(bad);
    CHECK_FALSE(r.ok());
    CHECK(r.to_string().find("Ghost") != std::string::npos);
  }

  SUBCASE("firing set outside the node set") {
    AlphaConnector bad = good;
    bad.automaton.transitions.insert(
        Transition{bad.automaton.initial, {M}, top, bad.automaton.initial});
    CHECK_FALSE(validate_alpha_structure(bad).ok());
  }

  SUBCASE("constraint mentioning a foreign node") {
    AlphaConnector bad = good;
    bad.automaton.transitions.insert(
        Transition{bad.automaton.initial, {A, B}, atom(M, "foo"), bad.automaton.initial});
    CHECK_FALSE(validate_alpha_structure(bad).ok());
  }

  SUBCASE("initial state not declared") {
    AlphaConnector bad = good;
    bad.automaton.initial = Index::atom("Ghost", "g");
    CHECK_FALSE(validate_alpha_structure(bad).ok());
  }
}

TEST_CASE("full validation also checks universe membership and determinism") {
  DataUniverse u{{"foo"}};

  SUBCASE("an item outside the universe is flagged") {
    AlphaConnector bad = tiny_channel(A, B, atom(A, "baz"));
    CaValidationReport r = validate_ca(bad, u);
    CHECK_FALSE(r.ok());
    CHECK(r.to_string().find("baz") != std::string::npos);
  }

  SUBCASE("overlapping transitions from one state are reported") {
    AlphaConnector bad = tiny_channel(A, B, atom(A, "foo"));
    Index q = bad.automaton.initial;
    Index r2 = Index::atom("Other", "c");
    bad.automaton.states.insert(r2);
    bad.automaton.transitions.insert(Transition{r2, {}, top, r2});
    // Same source and firing set as the existing {A, B} transition, and the
    // conjunction of the two constraints is satisfiable.
    bad.automaton.transitions.insert(Transition{q, {A, B}, top, r2});
    CaValidationReport report = validate_ca(bad, u);
    CHECK_FALSE(report.ok());
    CHECK_FALSE(report.deterministic);
    CHECK(report.to_string().find("nondeterministic") != std::string::npos);
    CHECK_FALSE(is_deterministic(bad.automaton, bad.structure.nodes, u));
  }

  SUBCASE("mutually exclusive constraints keep determinism") {
    Index q = Index::atom("Chan", "c");
    AlphaConnector a{
        ConnectorStructure{{A, B}, {{A, B}}},
        ConstraintAutomaton{{q},
                            {Transition{q, {A, B}, atom(A, "foo"), q},
                             Transition{q, {A, B}, DataConstraint::neg(atom(A, "foo")), q},
                             Transition{q, {}, top, q}},
                            q}};
    CHECK(is_deterministic(a.automaton, a.structure.nodes, u));
    CHECK(validate_ca(a, u).ok());
    CHECK(validate_ca(a, u).deterministic);
  }
}

TEST_CASE("product pairs states and syncs on shared nodes") {
  DataUniverse u{{"foo"}};
  AlphaConnector left = instantiate(PrimitiveKind::Sync, {A, M}, "s", u).alpha;
  AlphaConnector right = instantiate(PrimitiveKind::Fifo, {M, B}, "f", u).alpha;
  AlphaConnector prod = compose_alpha_connectors(left, right);

  CHECK(prod.automaton.states.size() ==
        left.automaton.states.size() * right.automaton.states.size());
  CHECK(prod.structure.nodes == std::set<Node>{A, B, M});

  Index sync = Index::atom("Sync", "s");
  Index at_empty = Index::pair(sync, Index::atom("FIFO-E", "f"));
  Index at_full = Index::pair(sync, Index::atom("FIFO-F", "f"));
  CHECK(prod.automaton.initial == at_empty);

  DataConstraint sync_fires = DataConstraint::conj(atom(A, "foo"), atom(M, "foo"));
  std::set<Transition> expected{
      // Shared node M forces the sync and the fifo accept to fire together.
      Transition{at_empty, {A, M}, DataConstraint::conj(sync_fires, atom(M, "foo")),
                 at_full},
      Transition{at_empty, {}, DataConstraint::conj(top, top), at_empty},
      Transition{at_full, {B}, DataConstraint::conj(top, atom(B, "foo")), at_empty},
      Transition{at_full, {}, DataConstraint::conj(top, top), at_full},
  };
  CHECK(prod.automaton.transitions == expected);
  CHECK(validate_ca(prod, u).ok());
}

TEST_CASE("the product keeps every state pair, reachable or not") {
  DataUniverse u{{"foo"}};
  AlphaConnector f1 = instantiate(PrimitiveKind::Fifo, {A, B}, "f1", u).alpha;
  AlphaConnector f2 = instantiate(PrimitiveKind::Fifo, {B, C}, "f2", u).alpha;
  AlphaConnector prod = compose_alpha_connectors(f1, f2);
  CHECK(prod.automaton.states.size() == 4);
}

TEST_CASE("pruning drops exactly the states the initial one cannot reach") {
  Index q = Index::atom("Q", "x");
  Index island = Index::atom("Island", "x");
  ConstraintAutomaton ca{{q, island},
                         {Transition{q, {A}, atom(A, "foo"), q},
                          Transition{q, {}, top, q},
                          Transition{island, {}, top, island},
                          Transition{island, {A}, top, q}},
                         q};
  ConstraintAutomaton pruned = prune_unreachable(ca);
  CHECK(pruned.states == std::set<Index>{q});
  CHECK(pruned.transitions.size() == 2);
  CHECK(pruned.initial == q);
  for (const Transition& t : pruned.transitions) {
    CHECK(pruned.states.count(t.source) == 1);
    CHECK(pruned.states.count(t.target) == 1);
  }
}

TEST_CASE("product composition needs boundary-compatible structures") {
  DataUniverse u{{"foo"}};
  AlphaConnector s1 = instantiate(PrimitiveKind::Sync, {A, M}, "s1", u).alpha;
  AlphaConnector s2 = instantiate(PrimitiveKind::Sync, {B, M}, "s2", u).alpha;
  CHECK_THROWS_AS(compose_alpha_connectors(s1, s2), IncompatibleStructures);
}

TEST_CASE("disjoint products interleave firings") {
  DataUniverse u{{"foo"}};
  AlphaConnector s1 = instantiate(PrimitiveKind::Sync, {A, B}, "s1", u).alpha;
  AlphaConnector s2 = instantiate(PrimitiveKind::Sync, {C, M}, "s2", u).alpha;
  AlphaConnector prod = compose_alpha_connectors(s1, s2);

  // No shared nodes: each side may fire alone (paired with the other's
  // explicit idle loop) or both together.
  std::set<std::set<Node>> firings;
  for (const Transition& t : prod.automaton.transitions) firings.insert(t.firing);
  CHECK(firings == std::set<std::set<Node>>{{}, {A, B}, {C, M}, {A, B, C, M}});
}

TEST_CASE("idle loops survive composition") {
  DataUniverse u{{"foo"}};
  AlphaConnector left = instantiate(PrimitiveKind::Sync, {A, M}, "s", u).alpha;
  AlphaConnector right = instantiate(PrimitiveKind::Fifo, {M, B}, "f", u).alpha;
  AlphaConnector prod = compose_alpha_connectors(left, right);
  for (const Index& q : prod.automaton.states) {
    bool has_idle = false;
    for (const Transition& t : prod.automaton.transitions) {
      if (t.source == q && t.firing.empty() && t.target == q) has_idle = true;
    }
    CHECK(has_idle);
  }
}
