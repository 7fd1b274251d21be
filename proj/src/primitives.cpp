#include "reosem/primitives.hpp"

#include <sstream>

#include "reosem/transform.hpp"

namespace reosem {

int primitive_arity(PrimitiveKind kind) {
  switch (kind) {
    case PrimitiveKind::Sync:
    case PrimitiveKind::LossySync:
    case PrimitiveKind::Fifo:
    case PrimitiveKind::SyncDrain:
      return 2;
    case PrimitiveKind::Merger:
    case PrimitiveKind::Replicator:
      return 3;
  }
  throw Error("unreachable primitive kind");
}

std::string_view primitive_name(PrimitiveKind kind) {
  switch (kind) {
    case PrimitiveKind::Sync:
      return "sync";
    case PrimitiveKind::LossySync:
      return "lossysync";
    case PrimitiveKind::Fifo:
      return "fifo";
    case PrimitiveKind::SyncDrain:
      return "syncdrain";
    case PrimitiveKind::Merger:
      return "merger";
    case PrimitiveKind::Replicator:
      return "replicator";
  }
  throw Error("unreachable primitive kind");
}

std::optional<PrimitiveKind> primitive_kind_from_name(std::string_view name) {
  for (PrimitiveKind kind :
       {PrimitiveKind::Sync, PrimitiveKind::LossySync, PrimitiveKind::Fifo,
        PrimitiveKind::SyncDrain, PrimitiveKind::Merger, PrimitiveKind::Replicator}) {
    if (primitive_name(kind) == name) return kind;
  }
  return std::nullopt;
}

namespace {

ConstraintColoring admit(const std::set<Node>& nodes, const std::set<Node>& firing,
                         DataConstraint g) {
  return ConstraintColoring{coloring_from_flow_set(nodes, firing), std::move(g)};
}

DataConstraint items_equal(const Node& a, const Node& b, const DataUniverse& u) {
  return desugar(ConstraintExpr::node_eq(a, b), u);
}

// One index, one table, every coloring looping back to the index.
EpsilonConnector stateless(ConnectorStructure structure, Index index,
                           std::set<ConstraintColoring> table) {
  EpsilonConnector e{std::move(structure),
                     InitializedNextFunction{ConstraintCtm{{}, {index}, {}}, {}, index}};
  e.behavior.ctm.nodes = e.structure.nodes;
  for (const ConstraintColoring& x : table) e.behavior.next.emplace(std::make_pair(index, x), index);
  e.behavior.ctm.table.emplace(std::move(index), std::move(table));
  return e;
}

EpsilonConnector build_eps(PrimitiveKind kind, const std::vector<Node>& nodes,
                           const std::string& instance, const DataUniverse& u) {
  const DataConstraint top = DataConstraint::top();
  switch (kind) {
    case PrimitiveKind::Sync: {
      const Node &a = nodes[0], &b = nodes[1];
      std::set<Node> ns{a, b};
      return stateless(ConnectorStructure{ns, {{a, b}}}, Index::atom("Sync", instance),
                       {admit(ns, {a, b}, items_equal(a, b, u)), admit(ns, {}, top)});
    }
    case PrimitiveKind::LossySync: {
      const Node &a = nodes[0], &b = nodes[1];
      std::set<Node> ns{a, b};
      return stateless(ConnectorStructure{ns, {{a, b}}}, Index::atom("LSync", instance),
                       {admit(ns, {a, b}, items_equal(a, b, u)), admit(ns, {a}, top),
                        admit(ns, {}, top)});
    }
    case PrimitiveKind::SyncDrain: {
      // Both ends fire together with unrelated data. Directional here: the
      // structure routes first -> second like a sync (see README).
      const Node &a = nodes[0], &b = nodes[1];
      std::set<Node> ns{a, b};
      return stateless(ConnectorStructure{ns, {{a, b}}}, Index::atom("SyncDrain", instance),
                       {admit(ns, {a, b}, top), admit(ns, {}, top)});
    }
    case PrimitiveKind::Merger: {
      const Node &a = nodes[0], &b = nodes[1], &c = nodes[2];
      std::set<Node> ns{a, b, c};
      return stateless(ConnectorStructure{ns, {{a, c}, {b, c}}},
                       Index::atom("Merger", instance),
                       {admit(ns, {a, c}, items_equal(a, c, u)),
                        admit(ns, {b, c}, items_equal(b, c, u)), admit(ns, {}, top)});
    }
    case PrimitiveKind::Replicator: {
      const Node &a = nodes[0], &b = nodes[1], &c = nodes[2];
      std::set<Node> ns{a, b, c};
      return stateless(ConnectorStructure{ns, {{a, b}, {a, c}}},
                       Index::atom("Repl", instance),
                       {admit(ns, {a, b, c},
                              DataConstraint::conj(items_equal(a, b, u),
                                                   items_equal(a, c, u))),
                        admit(ns, {}, top)});
    }
    case PrimitiveKind::Fifo: {
      const Node &a = nodes[0], &b = nodes[1];
      std::set<Node> ns{a, b};
      Index empty = Index::atom("FIFO-E", instance);
      EpsilonConnector e{ConnectorStructure{ns, {{a, b}}},
                         InitializedNextFunction{ConstraintCtm{ns, {empty}, {}}, {}, empty}};
      std::set<ConstraintColoring> empty_table{admit(ns, {}, top)};
      e.behavior.next.emplace(std::make_pair(empty, admit(ns, {}, top)), empty);
      // One full state per storable item; a singleton universe keeps the
      // plain name.
      for (const std::string& item : u.items()) {
        std::string name = u.size() == 1 ? "FIFO-F" : "FIFO-F:" + item;
        Index full = Index::atom(name, instance);
        e.behavior.ctm.indexes.insert(full);
        ConstraintColoring take = admit(ns, {a}, DataConstraint::atom(a, item));
        ConstraintColoring give = admit(ns, {b}, DataConstraint::atom(b, item));
        empty_table.insert(take);
        e.behavior.ctm.table.emplace(full,
                                     std::set<ConstraintColoring>{give, admit(ns, {}, top)});
        e.behavior.next.emplace(std::make_pair(empty, std::move(take)), full);
        e.behavior.next.emplace(std::make_pair(full, std::move(give)), empty);
        e.behavior.next.emplace(std::make_pair(full, admit(ns, {}, top)), full);
      }
      e.behavior.ctm.table.emplace(std::move(empty), std::move(empty_table));
      return e;
    }
  }
  throw Error("unreachable primitive kind");
}

}  // namespace

PrimitiveModels instantiate(PrimitiveKind kind, const std::vector<Node>& nodes,
                            const std::string& instance, const DataUniverse& u) {
  if (instance.empty()) throw Error("instance id must be nonempty");
  int arity = primitive_arity(kind);
  if (static_cast<int>(nodes.size()) != arity) {
    std::ostringstream msg;
    msg << std::string(primitive_name(kind)) << " takes " << arity << " nodes, got "
        << nodes.size();
    throw Error(msg.str());
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[i] == nodes[j])
        throw Error("primitive nodes must be distinct, got " + nodes[i].name() + " twice");
    }
  }
  EpsilonConnector eps = build_eps(kind, nodes, instance, u);
  AlphaConnector alpha = l_transform(eps);
  return PrimitiveModels{std::move(eps), std::move(alpha)};
}

namespace {

Node mapped(const std::map<Node, Node>& mapping, const Node& n) {
  auto it = mapping.find(n);
  if (it == mapping.end()) throw Error("node mapping misses node " + n.name());
  return it->second;
}

void check_injective_on(const std::map<Node, Node>& mapping, const std::set<Node>& nodes) {
  std::map<Node, Node> seen;  // image -> preimage
  for (const Node& n : nodes) {
    Node to = mapped(mapping, n);
    auto [it, inserted] = seen.emplace(to, n);
    if (!inserted)
      throw Error("node mapping is not injective: " + it->second.name() + " and " +
                  n.name() + " both map to " + to.name());
  }
}

std::set<Node> rename_set(const std::set<Node>& nodes, const std::map<Node, Node>& m) {
  std::set<Node> out;
  for (const Node& n : nodes) out.insert(mapped(m, n));
  return out;
}

ConnectorStructure rename_structure(const ConnectorStructure& s,
                                    const std::map<Node, Node>& m) {
  ConnectorStructure out{rename_set(s.nodes, m), {}};
  for (const auto& [from, to] : s.flow) out.flow.emplace(mapped(m, from), mapped(m, to));
  return out;
}

DataConstraint rename_constraint(const DataConstraint& g, const std::map<Node, Node>& m) {
  switch (g.kind()) {
    case DataConstraint::Kind::Top:
      return g;
    case DataConstraint::Kind::Atom:
      return DataConstraint::atom(mapped(m, g.atom_node()), g.atom_item());
    case DataConstraint::Kind::Neg:
      return DataConstraint::neg(rename_constraint(g.body(), m));
    case DataConstraint::Kind::Conj:
      return DataConstraint::conj(rename_constraint(g.left(), m),
                                  rename_constraint(g.right(), m));
  }
  throw Error("unreachable constraint kind");
}

ConstraintColoring rename_coloring(const ConstraintColoring& x,
                                   const std::map<Node, Node>& m) {
  std::map<Node, Color> entries;
  for (const auto& [n, color] : x.coloring.entries()) entries.emplace(mapped(m, n), color);
  return ConstraintColoring{Coloring(std::move(entries)),
                            rename_constraint(x.constraint, m)};
}

}  // namespace

EpsilonConnector rename_nodes(const EpsilonConnector& e, const std::map<Node, Node>& mapping) {
  check_injective_on(mapping, e.structure.nodes);
  EpsilonConnector out{rename_structure(e.structure, mapping),
                       InitializedNextFunction{
                           ConstraintCtm{rename_set(e.behavior.ctm.nodes, mapping),
                                         e.behavior.ctm.indexes,
                                         {}},
                           {},
                           e.behavior.initial}};
  for (const auto& [i, table] : e.behavior.ctm.table) {
    std::set<ConstraintColoring> renamed;
    for (const ConstraintColoring& x : table) renamed.insert(rename_coloring(x, mapping));
    out.behavior.ctm.table.emplace(i, std::move(renamed));
  }
  for (const auto& [key, target] : e.behavior.next) {
    out.behavior.next.emplace(
        std::make_pair(key.first, rename_coloring(key.second, mapping)), target);
  }
  return out;
}

AlphaConnector rename_nodes(const AlphaConnector& a, const std::map<Node, Node>& mapping) {
  check_injective_on(mapping, a.structure.nodes);
  AlphaConnector out{rename_structure(a.structure, mapping),
                     ConstraintAutomaton{a.automaton.states, {}, a.automaton.initial}};
  for (const Transition& t : a.automaton.transitions) {
    out.automaton.transitions.insert(Transition{t.source, rename_set(t.firing, mapping),
                                                rename_constraint(t.constraint, mapping),
                                                t.target});
  }
  return out;
}

}  // namespace reosem
