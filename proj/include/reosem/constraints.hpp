#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "reosem/core.hpp"
#include "reosem/errors.hpp"

namespace reosem {

// The finite set of data items a connector can carry. Never empty.
class DataUniverse {
 public:
  explicit DataUniverse(std::set<std::string> items);

  const std::set<std::string>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool contains(const std::string& item) const { return items_.count(item) != 0; }

  bool operator==(const DataUniverse&) const = default;

 private:
  std::set<std::string> items_;
};

// Core data constraint: an immutable AST built from exactly four shapes.
//
//   top            always true
//   atom(n, d)     the item observed at node n equals d
//   neg(g)         negation
//   conj(g1, g2)   conjunction
//
// Values are cheap to copy (shared subtrees) and compare structurally;
// no normalization ever happens on stored constraints.
class DataConstraint {
 public:
  enum class Kind { Top, Atom, Neg, Conj };

  DataConstraint() : DataConstraint(top()) {}

  static DataConstraint top();
  static DataConstraint atom(Node node, std::string item);
  static DataConstraint neg(DataConstraint body);
  static DataConstraint conj(DataConstraint left, DataConstraint right);

  Kind kind() const;
  // Atom accessors; only valid when kind() == Kind::Atom.
  const Node& atom_node() const;
  const std::string& atom_item() const;
  // Only valid when kind() == Kind::Neg.
  DataConstraint body() const;
  // Only valid when kind() == Kind::Conj.
  DataConstraint left() const;
  DataConstraint right() const;

  friend bool operator==(const DataConstraint& a, const DataConstraint& b);
  friend std::strong_ordering operator<=>(const DataConstraint& a,
                                          const DataConstraint& b);

 private:
  struct Rep;
  explicit DataConstraint(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  static std::strong_ordering compare(const Rep* x, const Rep* y);
  std::shared_ptr<const Rep> rep_;
};

// Surface-level constraint as written by users: the core shapes plus
// disjunction, implication and node equality. Desugaring eliminates the
// extras against a concrete universe.
class ConstraintExpr {
 public:
  enum class Kind { Top, Atom, Neg, Conj, Or, Implies, NodeEq };

  static ConstraintExpr top();
  static ConstraintExpr atom(Node node, std::string item);
  static ConstraintExpr neg(ConstraintExpr body);
  static ConstraintExpr conj(ConstraintExpr left, ConstraintExpr right);
  static ConstraintExpr disj(ConstraintExpr left, ConstraintExpr right);
  static ConstraintExpr implies(ConstraintExpr left, ConstraintExpr right);
  static ConstraintExpr node_eq(Node a, Node b);

  Kind kind() const;
  const Node& atom_node() const;
  const std::string& atom_item() const;
  ConstraintExpr body() const;
  ConstraintExpr left() const;
  ConstraintExpr right() const;
  // NodeEq accessors.
  const Node& eq_first() const;
  const Node& eq_second() const;

 private:
  struct Rep;
  explicit ConstraintExpr(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

// Partial: nodes may be unassigned. An atom over an unassigned node
// evaluates to false.
using DataAssignment = std::map<Node, std::string>;

// Rewrites Or via De Morgan, Implies via Or, and NodeEq as the disjunction
// over all items of "both nodes carry this item" (items in universe order,
// folded left; a single disjunct stays bare). Core shapes map to themselves.
DataConstraint desugar(const ConstraintExpr& expr, const DataUniverse& u);

bool evaluate(const DataConstraint& g, const DataAssignment& a);

inline constexpr std::uint64_t kDefaultMaxAssignments = 1'000'000;

// True iff some total assignment of flow_nodes satisfies g. Enumerates
// |u|^|flow_nodes| assignments; throws ResourceLimit beyond the budget.
bool satisfiable(const DataConstraint& g, const std::set<Node>& flow_nodes,
                 const DataUniverse& u,
                 std::uint64_t max_assignments = kDefaultMaxAssignments);

// True iff g1 and g2 agree on every partial assignment over `nodes`, which
// must cover both constraints' free nodes. Enumerates (|u|+1)^|nodes|
// assignments; throws ResourceLimit beyond the budget.
bool equivalent(const DataConstraint& g1, const DataConstraint& g2,
                const std::set<Node>& nodes, const DataUniverse& u,
                std::uint64_t max_assignments = kDefaultMaxAssignments);

std::set<Node> free_nodes(const DataConstraint& g);
std::set<Node> free_nodes(const ConstraintExpr& expr);

// Surface syntax:
//
//   g := "true" | ident == "item" | ident == ident | !g | g & g | g | g
//        | g -> g | (g)
//
// ! binds tightest, then &, then |, then ->. The binary connectives
// associate left except ->, which associates right.
ConstraintExpr parse_constraint(std::string_view text);

// Prints a core constraint in the surface syntax with minimal parentheses.
// parse + desugar of the result reproduces the input exactly.
std::string format_constraint(const DataConstraint& g);

}  // namespace reosem
