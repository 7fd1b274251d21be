#include "reosem/coloring.hpp"

#include <cassert>
#include <sstream>

namespace reosem {

std::set<Node> Coloring::domain() const {
  std::set<Node> out;
  for (const auto& [n, _] : entries_) out.insert(n);
  return out;
}

Color Coloring::at(const Node& n) const {
  auto it = entries_.find(n);
  if (it == entries_.end()) throw Error("coloring has no entry for node " + n.name());
  return it->second;
}

std::set<Node> flow_set(const Coloring& c) {
  std::set<Node> out;
  for (const auto& [n, color] : c.entries()) {
    if (color == Color::Flow) out.insert(n);
  }
  return out;
}

Coloring coloring_from_flow_set(const std::set<Node>& nodes, const std::set<Node>& firing) {
  std::map<Node, Color> entries;
  for (const Node& n : nodes) entries.emplace(n, Color::NoFlow);
  for (const Node& n : firing) {
    auto it = entries.find(n);
    if (it == entries.end())
      throw Error("flow set node " + n.name() + " is outside " + format_node_set(nodes));
    it->second = Color::Flow;
  }
  return Coloring(std::move(entries));
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

}  // namespace

IncompatibleColorings::IncompatibleColorings(std::vector<Node> offending)
    : Error("colorings disagree on shared nodes: " + join_names(offending)),
      offending_(std::move(offending)) {}

Coloring compose_colorings(const Coloring& c1, const Coloring& c2) {
  std::vector<Node> offending;
  for (const auto& [n, color] : c2.entries()) {
    auto it = c1.entries().find(n);
    if (it != c1.entries().end() && it->second != color) offending.push_back(n);
  }
  if (!offending.empty()) throw IncompatibleColorings(std::move(offending));
  std::map<Node, Color> entries = c1.entries();
  entries.insert(c2.entries().begin(), c2.entries().end());
  return Coloring(std::move(entries));
}

ConstraintColoring lift(Coloring c) {
  return ConstraintColoring{std::move(c), DataConstraint::top()};
}

ConstraintColoring compose_constraint_colorings(const ConstraintColoring& x1,
                                                const ConstraintColoring& x2) {
  return ConstraintColoring{compose_colorings(x1.coloring, x2.coloring),
                            DataConstraint::conj(x1.constraint, x2.constraint)};
}

std::set<ConstraintColoring> compose_constraint_tables(
    const std::set<ConstraintColoring>& t1, const std::set<ConstraintColoring>& t2,
    const std::set<Node>& n1, const std::set<Node>& n2) {
  std::set<Node> shared;
  for (const Node& n : n1) {
    if (n2.count(n)) shared.insert(n);
  }
  std::set<ConstraintColoring> out;
  for (const ConstraintColoring& x1 : t1) {
    for (const ConstraintColoring& x2 : t2) {
      bool compatible = true;
      for (const Node& n : shared) {
        if (x1.coloring.at(n) != x2.coloring.at(n)) {
          compatible = false;
          break;
        }
      }
      if (compatible) out.insert(compose_constraint_colorings(x1, x2));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Indexes.

struct Index::Rep {
  bool atom;
  std::string name;      // atom
  std::string instance;  // atom
  std::shared_ptr<const Rep> l;
  std::shared_ptr<const Rep> r;
};

Index Index::atom(std::string name, std::string instance) {
  if (name.empty()) throw Error("index atom name must be nonempty");
  if (instance.empty()) throw Error("index atom instance id must be nonempty");
  return Index(std::make_shared<const Rep>(
      Rep{true, std::move(name), std::move(instance), {}, {}}));
}

Index Index::pair(Index left, Index right) {
  return Index(std::make_shared<const Rep>(
      Rep{false, {}, {}, std::move(left.rep_), std::move(right.rep_)}));
}

bool Index::is_atom() const { return rep_->atom; }
bool Index::is_pair() const { return !rep_->atom; }

const std::string& Index::atom_name() const {
  assert(rep_->atom);
  return rep_->name;
}

const std::string& Index::atom_instance() const {
  assert(rep_->atom);
  return rep_->instance;
}

Index Index::left() const {
  assert(!rep_->atom);
  return Index(rep_->l);
}

Index Index::right() const {
  assert(!rep_->atom);
  return Index(rep_->r);
}

std::strong_ordering Index::compare(const Rep* x, const Rep* y) {
  if (x == y) return std::strong_ordering::equal;
  // Atoms sort before pairs.
  if (auto c = static_cast<int>(!x->atom) <=> static_cast<int>(!y->atom); c != 0) return c;
  if (x->atom) {
    if (auto c = x->name <=> y->name; c != 0) return c;
    return x->instance <=> y->instance;
  }
  if (auto c = compare(x->l.get(), y->l.get()); c != 0) return c;
  return compare(x->r.get(), y->r.get());
}

void Index::display_into(const Rep* rep, std::string& out) {
  if (rep->atom) {
    out += rep->name;
    out += '(';
    out += rep->instance;
    out += ')';
    return;
  }
  out += '<';
  display_into(rep->l.get(), out);
  out += ',';
  display_into(rep->r.get(), out);
  out += '>';
}

std::string Index::display() const {
  std::string out;
  display_into(rep_.get(), out);
  return out;
}

bool operator==(const Index& a, const Index& b) {
  return Index::compare(a.rep_.get(), b.rep_.get()) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Index& a, const Index& b) {
  return Index::compare(a.rep_.get(), b.rep_.get());
}

// ---------------------------------------------------------------------------
// Models.

ConstraintCtm compose_ctms(const ConstraintCtm& m1, const ConstraintCtm& m2) {
  ConstraintCtm out;
  out.nodes = m1.nodes;
  out.nodes.insert(m2.nodes.begin(), m2.nodes.end());
  for (const Index& i1 : m1.indexes) {
    for (const Index& i2 : m2.indexes) {
      Index paired = Index::pair(i1, i2);
      out.indexes.insert(paired);
      out.table.emplace(paired, compose_constraint_tables(m1.table.at(i1), m2.table.at(i2),
                                                          m1.nodes, m2.nodes));
    }
  }
  return out;
}

EpsilonConnector compose_epsilon_connectors(const EpsilonConnector& e1,
                                            const EpsilonConnector& e2) {
  EpsilonConnector out{compose_structures(e1.structure, e2.structure),
                       InitializedNextFunction{
                           compose_ctms(e1.behavior.ctm, e2.behavior.ctm),
                           {},
                           Index::pair(e1.behavior.initial, e2.behavior.initial)}};
  const auto& n1 = e1.behavior.ctm.nodes;
  const auto& n2 = e2.behavior.ctm.nodes;
  std::set<Node> shared;
  for (const Node& n : n1) {
    if (n2.count(n)) shared.insert(n);
  }
  for (const auto& [key1, target1] : e1.behavior.next) {
    for (const auto& [key2, target2] : e2.behavior.next) {
      const ConstraintColoring& x1 = key1.second;
      const ConstraintColoring& x2 = key2.second;
      bool compatible = true;
      for (const Node& n : shared) {
        if (x1.coloring.at(n) != x2.coloring.at(n)) {
          compatible = false;
          break;
        }
      }
      if (!compatible) continue;
      out.behavior.next.emplace(
          std::make_pair(Index::pair(key1.first, key2.first),
                         compose_constraint_colorings(x1, x2)),
          Index::pair(target1, target2));
    }
  }
  return out;
}

std::string format_constraint_coloring(const ConstraintColoring& x) {
  return "<" + format_node_set(flow_set(x.coloring)) + ", " +
         format_constraint(x.constraint) + ">";
}

ValidationReport validate_epsilon(const EpsilonConnector& e) {
  ValidationReport report = validate_structure(e.structure);
  const ConstraintCtm& ctm = e.behavior.ctm;

  if (ctm.nodes != e.structure.nodes)
    report.violations.push_back("table node set " + format_node_set(ctm.nodes) +
                                " differs from structure node set " +
                                format_node_set(e.structure.nodes));

  for (const Index& i : ctm.indexes) {
    if (!ctm.table.count(i))
      report.violations.push_back("index " + i.display() + " has no table entry");
  }
  for (const auto& [i, table] : ctm.table) {
    if (!ctm.indexes.count(i))
      report.violations.push_back("table entry for undeclared index " + i.display());
    for (const ConstraintColoring& x : table) {
      if (x.coloring.domain() != ctm.nodes)
        report.violations.push_back("coloring " + format_constraint_coloring(x) +
                                    " at index " + i.display() +
                                    " is not total over the node set");
    }
  }

  if (!ctm.indexes.count(e.behavior.initial))
    report.violations.push_back("initial index " + e.behavior.initial.display() +
                                " is not declared");

  // Domain condition: next is defined on exactly the admitted colorings.
  for (const auto& [key, target] : e.behavior.next) {
    const auto& [i, x] = key;
    auto it = ctm.table.find(i);
    if (it == ctm.table.end() || !it->second.count(x)) {
      report.violations.push_back("next entry (" + i.display() + ", " +
                                  format_constraint_coloring(x) +
                                  ") violates the domain condition: coloring not in table");
    }
    if (!ctm.indexes.count(target))
      report.violations.push_back("next target " + target.display() + " is not declared");
  }
  for (const auto& [i, table] : ctm.table) {
    for (const ConstraintColoring& x : table) {
      if (!e.behavior.next.count({i, x}))
        report.violations.push_back("next function is undefined for table coloring (" +
                                    i.display() + ", " + format_constraint_coloring(x) +
                                    ")");
    }
  }
  return report;
}

}  // namespace reosem
