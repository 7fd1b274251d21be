#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "reosem/constraints.hpp"
#include "reosem/core.hpp"
#include "reosem/errors.hpp"

namespace reosem {

enum class Color { Flow, NoFlow };

// Total map from a fixed node set to colors. Identified by its flow set:
// two colorings over the same domain are equal iff the same nodes flow.
class Coloring {
 public:
  explicit Coloring(std::map<Node, Color> entries) : entries_(std::move(entries)) {}

  const std::map<Node, Color>& entries() const { return entries_; }
  std::set<Node> domain() const;
  Color at(const Node& n) const;

  auto operator<=>(const Coloring&) const = default;

 private:
  std::map<Node, Color> entries_;
};

std::set<Node> flow_set(const Coloring& c);

// The unique coloring over `nodes` whose flow set is `firing`.
// Throws Error if firing is not a subset of nodes.
Coloring coloring_from_flow_set(const std::set<Node>& nodes,
                                const std::set<Node>& firing);

// Two colorings disagree on a shared node.
class IncompatibleColorings : public Error {
 public:
  explicit IncompatibleColorings(std::vector<Node> offending);

  const std::vector<Node>& offending() const { return offending_; }

 private:
  std::vector<Node> offending_;
};

// Union of compatible colorings; throws IncompatibleColorings naming every
// shared node the two sides color differently.
Coloring compose_colorings(const Coloring& c1, const Coloring& c2);

// A coloring paired with the data constraint that must hold when it is
// chosen. Composition conjoins constraints verbatim; nothing simplifies.
struct ConstraintColoring {
  Coloring coloring;
  DataConstraint constraint;

  auto operator<=>(const ConstraintColoring&) const = default;
};

// Attaches the trivial constraint.
ConstraintColoring lift(Coloring c);

ConstraintColoring compose_constraint_colorings(const ConstraintColoring& x1,
                                                const ConstraintColoring& x2);

// All pairwise compositions whose colorings agree on n1 ∩ n2. Incompatible
// pairs are dropped silently; an empty result is a legal table.
std::set<ConstraintColoring> compose_constraint_tables(
    const std::set<ConstraintColoring>& t1, const std::set<ConstraintColoring>& t2,
    const std::set<Node>& n1, const std::set<Node>& n2);

// Name for one configuration of a connector: a leaf for a primitive state,
// a pair mirroring each composition. Instance ids keep two copies of the
// same primitive apart.
class Index {
 public:
  static Index atom(std::string name, std::string instance);
  static Index pair(Index left, Index right);

  bool is_atom() const;
  bool is_pair() const;
  const std::string& atom_name() const;
  const std::string& atom_instance() const;
  Index left() const;
  Index right() const;

  // Human-readable form: name(instance) for atoms, <l,r> for pairs.
  std::string display() const;

  friend bool operator==(const Index& a, const Index& b);
  friend std::strong_ordering operator<=>(const Index& a, const Index& b);

 private:
  struct Rep;
  explicit Index(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  static std::strong_ordering compare(const Rep* x, const Rep* y);
  static void display_into(const Rep* rep, std::string& out);
  std::shared_ptr<const Rep> rep_;
};

// Constraint coloring table model: one table of admissible constraint
// colorings per index. Every coloring's domain is `nodes`; every index in
// `indexes` has a table entry, possibly empty.
struct ConstraintCtm {
  std::set<Node> nodes;
  std::set<Index> indexes;
  std::map<Index, std::set<ConstraintColoring>> table;

  bool operator==(const ConstraintCtm&) const = default;
};

// A CTM with the step relation and a start index. `next` maps the index
// the connector is at plus the constraint coloring it performs to the index
// it moves to; its domain is exactly { (i, x) | x ∈ table(i) }.
struct InitializedNextFunction {
  ConstraintCtm ctm;
  std::map<std::pair<Index, ConstraintColoring>, Index> next;
  Index initial;

  bool operator==(const InitializedNextFunction&) const = default;
};

// Connector structure plus coloring-table behavior over the same node set.
struct EpsilonConnector {
  ConnectorStructure structure;
  InitializedNextFunction behavior;

  bool operator==(const EpsilonConnector&) const = default;
};

// Pointwise product: pair indexes, compose tables, step both sides at once.
ConstraintCtm compose_ctms(const ConstraintCtm& m1, const ConstraintCtm& m2);

// Composes structure (which may throw IncompatibleStructures) and behavior.
EpsilonConnector compose_epsilon_connectors(const EpsilonConnector& e1,
                                            const EpsilonConnector& e2);

// Checks every invariant: structure validity, table totality, coloring
// domains, the next-function domain condition in both directions, targets
// and the initial index being declared.
ValidationReport validate_epsilon(const EpsilonConnector& e);

std::string format_constraint_coloring(const ConstraintColoring& x);

}  // namespace reosem
