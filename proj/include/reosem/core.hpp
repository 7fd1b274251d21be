#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "reosem/errors.hpp"

namespace reosem {

// A named point on a connector through which data items pass.
class Node {
 public:
  // Names must be nonempty and free of whitespace.
  explicit Node(std::string name);

  const std::string& name() const { return name_; }

  auto operator<=>(const Node&) const = default;

 private:
  std::string name_;
};

enum class NodeClass { Input, Output, Internal };

// Nodes plus a directed flow relation: (a, b) means a routes items to b.
struct ConnectorStructure {
  std::set<Node> nodes;
  std::set<std::pair<Node, Node>> flow;

  bool operator==(const ConnectorStructure&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  // All violations joined into one line, for error messages.
  std::string to_string() const;
};

// Two structures overlap on a node that is not a boundary pairing
// (input on one side, output on the other).
class IncompatibleStructures : public Error {
 public:
  explicit IncompatibleStructures(std::vector<Node> offending);

  const std::vector<Node>& offending() const { return offending_; }

 private:
  std::vector<Node> offending_;
};

// Checks that flow endpoints are declared and no node is isolated.
ValidationReport validate_structure(const ConnectorStructure& s);

// Partitions the nodes of a valid structure into Input (no incoming pair),
// Output (no outgoing pair) and Internal (both). Throws ValidationError on
// an invalid structure.
std::map<Node, NodeClass> classify_nodes(const ConnectorStructure& s);

// Union of nodes and flow. Every shared node must be an input of one side
// and an output of the other; otherwise throws IncompatibleStructures
// listing each offending node.
ConnectorStructure compose_structures(const ConnectorStructure& s1,
                                      const ConnectorStructure& s2);

std::string format_node_set(const std::set<Node>& nodes);

}  // namespace reosem
