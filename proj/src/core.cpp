#include "reosem/core.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace reosem {

Node::Node(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw Error("node name must be nonempty");
  for (unsigned char ch : name_) {
    if (std::isspace(ch)) throw Error("node name must not contain whitespace: '" + name_ + "'");
  }
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) out << "; ";
    out << violations[i];
  }
  return out.str();
}

std::string format_node_set(const std::set<Node>& nodes) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const Node& n : nodes) {
    if (!first) out << ", ";
    out << n.name();
    first = false;
  }
  out << '}';
  return out.str();
}

namespace {

std::string join_names(const std::vector<Node>& nodes) {
  std::ostringstream out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out << ", ";
    out << nodes[i].name();
  }
  return out.str();
}

bool has_incoming(const ConnectorStructure& s, const Node& n) {
  return std::any_of(s.flow.begin(), s.flow.end(),
                     [&](const auto& e) { return e.second == n; });
}

bool has_outgoing(const ConnectorStructure& s, const Node& n) {
  return std::any_of(s.flow.begin(), s.flow.end(),
                     [&](const auto& e) { return e.first == n; });
}

}  // namespace

IncompatibleStructures::IncompatibleStructures(std::vector<Node> offending)
    : Error("structures share nodes that are not input/output boundary pairs: " +
            join_names(offending)),
      offending_(std::move(offending)) {}

ValidationReport validate_structure(const ConnectorStructure& s) {
  ValidationReport report;
  for (const auto& [from, to] : s.flow) {
    if (!s.nodes.count(from))
      report.violations.push_back("flow pair (" + from.name() + ", " + to.name() +
                                  ") uses undeclared node " + from.name());
    if (!s.nodes.count(to))
      report.violations.push_back("flow pair (" + from.name() + ", " + to.name() +
                                  ") uses undeclared node " + to.name());
  }
  for (const Node& n : s.nodes) {
    if (!has_incoming(s, n) && !has_outgoing(s, n))
      report.violations.push_back("node " + n.name() + " is isolated");
  }
  return report;
}

std::map<Node, NodeClass> classify_nodes(const ConnectorStructure& s) {
  auto report = validate_structure(s);
  if (!report.ok()) throw ValidationError("invalid structure: " + report.to_string());
  std::map<Node, NodeClass> classes;
  for (const Node& n : s.nodes) {
    bool in = has_incoming(s, n);
    bool out = has_outgoing(s, n);
    classes.emplace(n, !in ? NodeClass::Input : !out ? NodeClass::Output : NodeClass::Internal);
  }
  return classes;
}

ConnectorStructure compose_structures(const ConnectorStructure& s1,
                                      const ConnectorStructure& s2) {
  auto classes1 = classify_nodes(s1);
  auto classes2 = classify_nodes(s2);

  std::vector<Node> offending;
  for (const Node& n : s1.nodes) {
    if (!s2.nodes.count(n)) continue;
    NodeClass k1 = classes1.at(n);
    NodeClass k2 = classes2.at(n);
    bool boundary = (k1 == NodeClass::Input && k2 == NodeClass::Output) ||
                    (k1 == NodeClass::Output && k2 == NodeClass::Input);
    if (!boundary) offending.push_back(n);
  }
  if (!offending.empty()) throw IncompatibleStructures(std::move(offending));

  ConnectorStructure out;
  out.nodes = s1.nodes;
  out.nodes.insert(s2.nodes.begin(), s2.nodes.end());
  out.flow = s1.flow;
  out.flow.insert(s2.flow.begin(), s2.flow.end());
  return out;
}

}  // namespace reosem
