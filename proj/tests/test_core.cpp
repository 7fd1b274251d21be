#include "doctest.h"

#include "reosem/core.hpp"

using namespace reosem;

namespace {

ConnectorStructure channel(const std::string& from, const std::string& to) {
  Node a{from}, b{to};
  return ConnectorStructure{{a, b}, {{a, b}}};
}

}  // namespace

TEST_CASE("node names must be nonempty and free of whitespace") {
  CHECK_NOTHROW(Node{"A"});
  CHECK_NOTHROW(Node{"long_name-42"});
  CHECK_THROWS_AS(Node{""}, Error);
  CHECK_THROWS_AS(Node{"A B"}, Error);
  CHECK_THROWS_AS(Node{"A\t"}, Error);
  CHECK_THROWS_AS(Node{"\nA"}, Error);
}

TEST_CASE("nodes order lexicographically") {
  CHECK(Node{"A"} < Node{"B"});
  CHECK(Node{"A"} == Node{"A"});
  CHECK(Node{"AB"} != Node{"AA"});
}

TEST_CASE("a single channel validates and classifies endpoints") {
  ConnectorStructure s = channel("A", "B");
  CHECK(validate_structure(s).ok());

  auto classes = classify_nodes(s);
  CHECK(classes.at(Node{"A"}) == NodeClass::Input);
  CHECK(classes.at(Node{"B"}) == NodeClass::Output);
}

TEST_CASE("a node with flow on both sides is internal") {
  Node a{"A"}, m{"M"}, b{"B"};
  ConnectorStructure s{{a, m, b}, {{a, m}, {m, b}}};
  auto classes = classify_nodes(s);
  CHECK(classes.at(a) == NodeClass::Input);
  CHECK(classes.at(m) == NodeClass::Internal);
  CHECK(classes.at(b) == NodeClass::Output);
}

TEST_CASE("a self-loop makes its node internal") {
  Node a{"A"};
  ConnectorStructure s{{a}, {{a, a}}};
  CHECK(validate_structure(s).ok());
  CHECK(classify_nodes(s).at(a) == NodeClass::Internal);
}

TEST_CASE("flow endpoints must be declared") {
  Node a{"A"}, b{"B"}, c{"C"};
  ConnectorStructure s{{a, b}, {{a, c}}};
  ValidationReport r = validate_structure(s);
  CHECK_FALSE(r.ok());
  CHECK(r.to_string().find("undeclared") != std::string::npos);
  CHECK_THROWS_AS(classify_nodes(s), ValidationError);
}

TEST_CASE("isolated nodes are rejected") {
  Node a{"A"}, b{"B"}, c{"C"};
  ConnectorStructure s{{a, b, c}, {{a, b}}};
  ValidationReport r = validate_structure(s);
  CHECK_FALSE(r.ok());
  CHECK(r.to_string().find("C is isolated") != std::string::npos);
}

TEST_CASE("the empty structure is valid") {
  ConnectorStructure s;
  CHECK(validate_structure(s).ok());
  CHECK(classify_nodes(s).empty());
}

TEST_CASE("composition joins on input/output boundary nodes") {
  ConnectorStructure left = channel("A", "M");
  ConnectorStructure right = channel("M", "B");
  ConnectorStructure joined = compose_structures(left, right);

  Node a{"A"}, m{"M"}, b{"B"};
  CHECK(joined.nodes == std::set<Node>{a, m, b});
  CHECK(joined.flow == std::set<std::pair<Node, Node>>{{a, m}, {m, b}});
  CHECK(classify_nodes(joined).at(m) == NodeClass::Internal);
}

TEST_CASE("composition of disjoint structures is plain union") {
  ConnectorStructure left = channel("A", "B");
  ConnectorStructure right = channel("C", "D");
  ConnectorStructure joined = compose_structures(left, right);
  CHECK(joined.nodes.size() == 4);
  CHECK(joined.flow.size() == 2);
}

TEST_CASE("sharing a node as input on both sides is rejected") {
  ConnectorStructure left = channel("M", "A");
  ConnectorStructure right = channel("M", "B");
  try {
    compose_structures(left, right);
    FAIL("composition should have thrown");
  } catch (const IncompatibleStructures& e) {
    CHECK(e.offending() == std::vector<Node>{Node{"M"}});
    CHECK(std::string(e.what()).find("M") != std::string::npos);
  }
}

TEST_CASE("sharing an internal node is rejected") {
  Node a{"A"}, m{"M"}, b{"B"};
  ConnectorStructure left{{a, m, b}, {{a, m}, {m, b}}};
  ConnectorStructure right = channel("M", "C");
  CHECK_THROWS_AS(compose_structures(left, right), IncompatibleStructures);
}

TEST_CASE("composition requires valid operands") {
  Node a{"A"}, b{"B"}, c{"C"};
  ConnectorStructure bad{{a, b, c}, {{a, b}}};
  CHECK_THROWS_AS(compose_structures(bad, channel("X", "Y")), ValidationError);
}

TEST_CASE("node sets format with braces") {
  CHECK(format_node_set({Node{"B"}, Node{"A"}}) == "{A, B}");
  CHECK(format_node_set({}) == "{}");
}
