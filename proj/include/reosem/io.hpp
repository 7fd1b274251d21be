#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "reosem/automata.hpp"
#include "reosem/coloring.hpp"
#include "reosem/constraints.hpp"
#include "reosem/primitives.hpp"

namespace reosem {

// A parsed circuit description:
//
//   universe {"foo", "bar"}
//   l = lossysync(A, M)
//   f = fifo(M, B)
//   circuit = l * f
//
// One universe line, one instance line per primitive, one final circuit
// line combining instances with * (left associative, parentheses allowed).
// # starts a comment. Duplicate instance names and references to undeclared
// instances are parse errors; arity is checked at elaboration.
struct CircuitSpec {
  struct Instance {
    std::string name;
    PrimitiveKind kind;
    std::vector<Node> nodes;
  };

  struct Expr;
  using ExprPtr = std::shared_ptr<const Expr>;
  // Either a reference to an instance (ref nonempty) or a composition.
  struct Expr {
    std::string ref;
    ExprPtr lhs;
    ExprPtr rhs;

    bool is_ref() const { return !lhs; }
  };

  std::vector<std::string> universe;
  std::vector<Instance> instances;
  ExprPtr circuit;
};

CircuitSpec parse_circuit(std::string_view text);

struct ElaboratedCircuit {
  DataUniverse universe;
  EpsilonConnector eps;
  AlphaConnector alpha;
};

// Instantiates every declared primitive (instance id = declared name) and
// folds the circuit expression with the composition operators, building the
// coloring model and the automaton side by side.
ElaboratedCircuit elaborate(const CircuitSpec& spec);

// A behavioral model bundled with the universe it is meant to run over;
// this is what model files store.
struct ModelFile {
  DataUniverse universe;
  std::variant<EpsilonConnector, AlphaConnector> model;

  bool operator==(const ModelFile&) const = default;
};

// Canonical text form: the header line "reoml 1" followed by a key-sorted
// JSON document. Equal models serialize to equal bytes. Throws
// ValidationError if the model is invalid or mentions items outside the
// declared universe.
std::string serialize(const ModelFile& m);

// Throws ParseError on malformed documents, schema violations or an unknown
// version, and ValidationError when the decoded model is invalid (with the
// broken invariant named). deserialize(serialize(m)) == m.
ModelFile deserialize(std::string_view text);

// Display-only cleanup for labels: drops trivial conjuncts and double
// negations. Stored models are never simplified.
DataConstraint simplify_for_display(const DataConstraint& g);

// Graphviz digraph with one node per state/index and one labeled edge per
// transition/next entry ("{A, B}, A==B"). Deterministic output.
std::string export_dot(const AlphaConnector& a, bool simplify);
std::string export_dot(const EpsilonConnector& e, bool simplify);
std::string export_dot(const ModelFile& m, bool simplify);

struct TraceStep {
  Index before;
  ConstraintColoring chosen;
  Index after;
};

struct Trace {
  std::vector<TraceStep> steps;
};

// Replays the chosen constraint colorings from the initial index. Each
// choice must be admitted by the table at the current index; otherwise
// throws Error naming the step.
Trace export_trace(const EpsilonConnector& e,
                   const std::vector<ConstraintColoring>& chosen);

// Canonical text form of a trace: header line "reotrace 1" plus JSON.
std::string format_trace(const Trace& t);

// Steps file for the CLI: one step per line, either "{A, B}" or
// "{A, B} ; constraint" when one flow set is ambiguous at some index.
// Resolves each line against the table at the current index and returns the
// chosen colorings; throws ParseError or Error (ambiguous/unadmitted step).
std::vector<ConstraintColoring> resolve_steps(const EpsilonConnector& e,
                                              const DataUniverse& u,
                                              std::string_view steps_text);

}  // namespace reosem
