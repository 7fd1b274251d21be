#include "doctest.h"

#include <algorithm>
#include <vector>

#include "reosem/bisim.hpp"
#include "reosem/primitives.hpp"
#include "reosem/transform.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace reosem;

namespace {

const Node A{"A"};
const Node B{"B"};

// Reference checker: keep recomputing the full deletion from scratch in a
// shuffled pair order until nothing changes. Matching goes through the
// truth-table oracle, not the library's equivalence search.
BisimVerdict naive_bisim(const AlphaConnector& a, const EpsilonConnector& e,
                         MatchMode mode, const DataUniverse& u, std::mt19937_64& rng) {
  std::vector<std::pair<Index, Index>> pairs;
  for (const Index& q : a.automaton.states) {
    for (const Index& i : e.behavior.ctm.indexes) pairs.emplace_back(q, i);
  }
  std::set<std::pair<Index, Index>> alive(pairs.begin(), pairs.end());

  auto match = [&](const DataConstraint& g1, const DataConstraint& g2) {
    if (mode == MatchMode::Syntactic) return g1 == g2;
    return oracle::equivalent(g1, g2, a.structure.nodes, u);
  };
  auto pair_ok = [&](const Index& q, const Index& i) {
    for (const Transition& t : a.automaton.transitions) {
      if (t.source != q) continue;
      bool matched = false;
      for (const auto& [key, target] : e.behavior.next) {
        if (key.first != i) continue;
        if (flow_set(key.second.coloring) != t.firing) continue;
        if (!match(t.constraint, key.second.constraint)) continue;
        if (alive.count({t.target, target})) matched = true;
      }
      if (!matched) return false;
    }
    for (const auto& [key, target] : e.behavior.next) {
      if (key.first != i) continue;
      bool matched = false;
      for (const Transition& t : a.automaton.transitions) {
        if (t.source != q) continue;
        if (flow_set(key.second.coloring) != t.firing) continue;
        if (!match(t.constraint, key.second.constraint)) continue;
        if (alive.count({t.target, target})) matched = true;
      }
      if (!matched) return false;
    }
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    std::shuffle(pairs.begin(), pairs.end(), rng);
    for (const auto& [q, i] : pairs) {
      if (!alive.count({q, i})) continue;
      if (!pair_ok(q, i)) {
        alive.erase({q, i});
        changed = true;
      }
    }
  }
  BisimVerdict v;
  v.bisimilar = alive.count({a.automaton.initial, e.behavior.initial}) != 0;
  v.witness.pairs = std::move(alive);
  return v;
}

}  // namespace

TEST_CASE("a connector is bisimilar to its own transform") {
  DataUniverse u{{"bar", "foo"}};
  for (PrimitiveKind kind : {PrimitiveKind::Sync, PrimitiveKind::LossySync,
                             PrimitiveKind::Fifo, PrimitiveKind::SyncDrain}) {
    PrimitiveModels m = instantiate(kind, {A, B}, "p", u);
    BisimVerdict v = check_bisim(m.alpha, m.eps, MatchMode::Syntactic, u);
    CHECK(v.bisimilar);
    CHECK_FALSE(v.culprit.has_value());
    for (const Index& q : m.alpha.automaton.states) CHECK(v.witness.contains(q, q));
    CHECK(verify_relation(m.alpha, m.eps, v.witness, MatchMode::Syntactic, u));
  }
}

TEST_CASE("buffered states are distinguished from empty ones") {
  DataUniverse u{{"bar", "foo"}};
  PrimitiveModels fifo = instantiate(PrimitiveKind::Fifo, {A, B}, "f", u);
  BisimVerdict v = check_bisim(fifo.alpha, fifo.eps, MatchMode::Semantic, u);
  CHECK(v.bisimilar);
  // Empty vs full(d) pairs die (different firing options), and the two full
  // states differ semantically on which item leaves. Only the diagonal lives.
  CHECK(v.witness.pairs.size() == fifo.alpha.automaton.states.size());
}

TEST_CASE("a plain channel is not bisimilar to a lossy one") {
  DataUniverse u{{"foo"}};
  PrimitiveModels sync = instantiate(PrimitiveKind::Sync, {A, B}, "s", u);
  PrimitiveModels lossy = instantiate(PrimitiveKind::LossySync, {A, B}, "l", u);

  BisimVerdict v = check_bisim(sync.alpha, lossy.eps, MatchMode::Semantic, u);
  CHECK_FALSE(v.bisimilar);
  REQUIRE(v.culprit.has_value());
  CHECK(v.culprit->first == Index::atom("Sync", "s"));
  CHECK(v.culprit->second == Index::atom("LSync", "l"));
  // The lossy side's lone-input step has no counterpart.
  CHECK(v.reason.find("{A}") != std::string::npos);

  BisimVerdict reversed = check_bisim(lossy.alpha, sync.eps, MatchMode::Semantic, u);
  CHECK_FALSE(reversed.bisimilar);
}

TEST_CASE("the checker requires matching node sets") {
  DataUniverse u{{"foo"}};
  PrimitiveModels sync = instantiate(PrimitiveKind::Sync, {A, B}, "s", u);
  PrimitiveModels other = instantiate(PrimitiveKind::Sync, {A, Node{"C"}}, "s", u);
  CHECK_THROWS_AS(check_bisim(sync.alpha, other.eps, MatchMode::Semantic, u), Error);
}

TEST_CASE("relation verification rejects both missing and bogus pairs") {
  DataUniverse u{{"foo"}};
  PrimitiveModels fifo = instantiate(PrimitiveKind::Fifo, {A, B}, "f", u);
  Index empty = Index::atom("FIFO-E", "f");
  Index full = Index::atom("FIFO-F", "f");

  BisimRelation diagonal{{{empty, empty}, {full, full}}};
  CHECK(verify_relation(fifo.alpha, fifo.eps, diagonal, MatchMode::Syntactic, u));

  // The diagonal without the full state: the empty state's buffering step
  // has no related successor any more.
  BisimRelation missing{{{empty, empty}}};
  CHECK_FALSE(verify_relation(fifo.alpha, fifo.eps, missing, MatchMode::Syntactic, u));

  // A relation that speaks for unmatched pairs fails on them.
  BisimRelation bogus{{{empty, empty}, {full, full}, {empty, full}}};
  CHECK_FALSE(verify_relation(fifo.alpha, fifo.eps, bogus, MatchMode::Syntactic, u));

  // Not containing the initials at all is already disqualifying.
  BisimRelation rootless{{{full, full}}};
  CHECK_FALSE(verify_relation(fifo.alpha, fifo.eps, rootless, MatchMode::Syntactic, u));
}

TEST_CASE("semantic matching absorbs trivial conjunctions, syntactic does not") {
  DataUniverse u{{"foo"}};
  PrimitiveModels fifo = instantiate(PrimitiveKind::Fifo, {A, B}, "f", u);

  // Rewrite every transition constraint g as (true & g): same meaning,
  // different tree.
  AlphaConnector wrapped = fifo.alpha;
  std::set<Transition> rewritten;
  for (Transition t : wrapped.automaton.transitions) {
    t.constraint = DataConstraint::conj(DataConstraint::top(), t.constraint);
    rewritten.insert(std::move(t));
  }
  wrapped.automaton.transitions = std::move(rewritten);

  CHECK_FALSE(check_bisim(wrapped, fifo.eps, MatchMode::Syntactic, u).bisimilar);
  CHECK(check_bisim(wrapped, fifo.eps, MatchMode::Semantic, u).bisimilar);
}

TEST_CASE("semantic matching honors the assignment budget") {
  DataUniverse u{{"foo"}};
  PrimitiveModels fifo = instantiate(PrimitiveKind::Fifo, {A, B}, "f", u);
  AlphaConnector wrapped = fifo.alpha;
  std::set<Transition> rewritten;
  for (Transition t : wrapped.automaton.transitions) {
    t.constraint = DataConstraint::conj(DataConstraint::top(), t.constraint);
    rewritten.insert(std::move(t));
  }
  wrapped.automaton.transitions = std::move(rewritten);
  // Equivalence over {A, B} with one item needs (1+1)^2 = 4 assignments.
  CHECK_THROWS_AS(check_bisim(wrapped, fifo.eps, MatchMode::Semantic, u, 3), ResourceLimit);
}

TEST_CASE("the checker agrees with a shuffled from-scratch reference") {
  gen::Rng rng(777);
  std::mt19937_64 shuffler(778);
  int disagreements = 0;
  for (int i = 0; i < 40; ++i) {
    gen::CompositePlan plan = gen::random_composite(rng, 1, 3);
    EpsilonConnector eps = gen::fold_eps(plan);
    AlphaConnector alpha = gen::fold_alpha(plan);

    // Half the rounds perturb the automaton side so mismatches occur too.
    if (i % 2 == 1 && !alpha.automaton.transitions.empty()) {
      std::set<Transition> fewer(alpha.automaton.transitions);
      fewer.erase(std::next(fewer.begin(),
                            rng.range(0, static_cast<int>(fewer.size()) - 1)));
      alpha.automaton.transitions = std::move(fewer);
    }

    for (MatchMode mode : {MatchMode::Syntactic, MatchMode::Semantic}) {
      BisimVerdict expected = naive_bisim(alpha, eps, mode, plan.universe, shuffler);
      BisimVerdict got = check_bisim(alpha, eps, mode, plan.universe);
      CHECK(got.bisimilar == expected.bisimilar);
      if (got.bisimilar != expected.bisimilar) ++disagreements;
      if (got.bisimilar) {
        CHECK(got.witness.pairs == expected.witness.pairs);
        CHECK(verify_relation(alpha, eps, got.witness, mode, plan.universe));
      } else {
        CHECK(got.culprit.has_value());
        CHECK_FALSE(got.reason.empty());
      }
    }
  }
  CHECK(disagreements == 0);
}
