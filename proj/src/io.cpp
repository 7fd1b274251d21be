#include "reosem/io.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "reosem/transform.hpp"

namespace reosem {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Circuit DSL.

namespace {

struct Line {
  int number;
  std::string text;  // comment stripped
};

// Strips "#" comments, but not inside string literals.
std::vector<Line> logical_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 1;
  std::string current;
  bool in_string = false;
  auto flush = [&]() {
    lines.push_back({number, current});
    current.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\n') {
      flush();
      ++number;
      in_string = false;
      continue;
    }
    if (in_string && c == '\\' && i + 1 < text.size()) {
      current += c;
      current += text[++i];
      continue;
    }
    if (c == '"') in_string = !in_string;
    if (c == '#' && !in_string) {
      while (i + 1 < text.size() && text[i + 1] != '\n') ++i;
      continue;
    }
    current += c;
  }
  flush();
  return lines;
}

class LineCursor {
 public:
  LineCursor(const std::string& text, int line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  int column() const { return static_cast<int>(pos_) + 1; }
  int line() const { return line_; }

  void expect(char c, const std::string& what) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError("expected " + what, line_, column());
    ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string ident(const std::string& what) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) throw ParseError("expected " + what, line_, column());
    return text_.substr(start, pos_ - start);
  }

  std::string string_lit() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '"')
      throw ParseError("expected string literal", line_, column());
    int start_col = column();
    ++pos_;
    std::string value;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      char c = text_[pos_];
      if (c == '\\' && pos_ + 1 < text_.size()) c = text_[++pos_];
      value += c;
      ++pos_;
    }
    if (pos_ >= text_.size())
      throw ParseError("unterminated string literal", line_, start_col);
    ++pos_;
    return value;
  }

  std::string rest() {
    skip_ws();
    return text_.substr(pos_);
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_;
};

CircuitSpec::ExprPtr parse_term(LineCursor& cur, const CircuitSpec& spec);

CircuitSpec::ExprPtr parse_expr(LineCursor& cur, const CircuitSpec& spec) {
  CircuitSpec::ExprPtr e = parse_term(cur, spec);
  while (cur.consume('*')) {
    CircuitSpec::ExprPtr rhs = parse_term(cur, spec);
    e = std::make_shared<const CircuitSpec::Expr>(CircuitSpec::Expr{"", e, rhs});
  }
  return e;
}

CircuitSpec::ExprPtr parse_term(LineCursor& cur, const CircuitSpec& spec) {
  if (cur.consume('(')) {
    CircuitSpec::ExprPtr e = parse_expr(cur, spec);
    cur.expect(')', "')'");
    return e;
  }
  int col = cur.column();
  std::string name = cur.ident("instance name");
  bool declared = false;
  for (const auto& inst : spec.instances) declared |= inst.name == name;
  if (!declared)
    throw ParseError("undeclared instance '" + name + "'", cur.line(), col);
  return std::make_shared<const CircuitSpec::Expr>(CircuitSpec::Expr{name, nullptr, nullptr});
}

}  // namespace

CircuitSpec parse_circuit(std::string_view text) {
  CircuitSpec spec;
  bool saw_universe = false;
  bool saw_circuit = false;

  for (const Line& line : logical_lines(text)) {
    LineCursor cur(line.text, line.number);
    if (cur.at_end()) continue;

    if (!saw_universe) {
      int col = cur.column();
      if (cur.ident("'universe'") != "universe")
        throw ParseError("a circuit starts with its universe declaration", line.number, col);
      cur.expect('{', "'{'");
      spec.universe.push_back(cur.string_lit());
      while (cur.consume(',')) spec.universe.push_back(cur.string_lit());
      cur.expect('}', "'}'");
      if (!cur.at_end())
        throw ParseError("trailing input after universe declaration", line.number, cur.column());
      saw_universe = true;
      continue;
    }

    int col = cur.column();
    std::string name = cur.ident("declaration");
    if (name == "circuit") {
      if (saw_circuit)
        throw ParseError("duplicate circuit line", line.number, col);
      cur.expect('=', "'='");
      spec.circuit = parse_expr(cur, spec);
      if (!cur.at_end())
        throw ParseError("trailing input after circuit expression", line.number, cur.column());
      saw_circuit = true;
      continue;
    }

    if (saw_circuit)
      throw ParseError("instance declared after the circuit line", line.number, col);
    if (name == "universe")
      throw ParseError("duplicate universe declaration", line.number, col);
    for (const auto& inst : spec.instances) {
      if (inst.name == name)
        throw ParseError("duplicate instance '" + name + "'", line.number, col);
    }
    cur.expect('=', "'='");
    int kind_col = cur.column();
    std::string kind_name = cur.ident("primitive kind");
    auto kind = primitive_kind_from_name(kind_name);
    if (!kind)
      throw ParseError("unknown primitive kind '" + kind_name + "'", line.number, kind_col);
    CircuitSpec::Instance inst{name, *kind, {}};
    cur.expect('(', "'('");
    inst.nodes.emplace_back(cur.ident("node name"));
    while (cur.consume(',')) inst.nodes.emplace_back(cur.ident("node name"));
    cur.expect(')', "')'");
    if (!cur.at_end())
      throw ParseError("trailing input after instance declaration", line.number, cur.column());
    spec.instances.push_back(std::move(inst));
  }

  if (!saw_universe) throw ParseError("empty circuit: missing universe declaration");
  if (!saw_circuit) throw ParseError("missing circuit line");
  return spec;
}

namespace {

std::pair<EpsilonConnector, AlphaConnector> fold_expr(
    const CircuitSpec::ExprPtr& expr,
    const std::map<std::string, PrimitiveModels>& built) {
  if (expr->is_ref()) {
    const PrimitiveModels& m = built.at(expr->ref);
    return {m.eps, m.alpha};
  }
  auto [le, la] = fold_expr(expr->lhs, built);
  auto [re, ra] = fold_expr(expr->rhs, built);
  return {compose_epsilon_connectors(le, re), compose_alpha_connectors(la, ra)};
}

}  // namespace

ElaboratedCircuit elaborate(const CircuitSpec& spec) {
  DataUniverse u{std::set<std::string>(spec.universe.begin(), spec.universe.end())};
  std::map<std::string, PrimitiveModels> built;
  for (const auto& inst : spec.instances)
    built.emplace(inst.name, instantiate(inst.kind, inst.nodes, inst.name, u));
  auto [eps, alpha] = fold_expr(spec.circuit, built);
  return ElaboratedCircuit{std::move(u), std::move(eps), std::move(alpha)};
}

// ---------------------------------------------------------------------------
// Model files.

namespace {

constexpr std::string_view kModelHeader = "reoml 1";
constexpr std::string_view kTraceHeader = "reotrace 1";

json index_to_json(const Index& i) {
  if (i.is_atom())
    return json{{"atom", json{{"instance", i.atom_instance()}, {"name", i.atom_name()}}}};
  return json{{"pair", json::array({index_to_json(i.left()), index_to_json(i.right())})}};
}

json constraint_to_json(const DataConstraint& g) {
  switch (g.kind()) {
    case DataConstraint::Kind::Top:
      return json::array({"top"});
    case DataConstraint::Kind::Atom:
      return json::array({"eq", g.atom_node().name(), g.atom_item()});
    case DataConstraint::Kind::Neg:
      return json::array({"not", constraint_to_json(g.body())});
    case DataConstraint::Kind::Conj:
      return json::array(
          {"and", constraint_to_json(g.left()), constraint_to_json(g.right())});
  }
  throw Error("unreachable constraint kind");
}

json node_set_to_json(const std::set<Node>& nodes) {
  json out = json::array();
  for (const Node& n : nodes) out.push_back(n.name());
  return out;
}

json coloring_to_json(const ConstraintColoring& x) {
  return json{{"constraint", constraint_to_json(x.constraint)},
              {"flow", node_set_to_json(flow_set(x.coloring))}};
}

json structure_to_json(const ConnectorStructure& s) {
  json flow = json::array();
  for (const auto& [from, to] : s.flow)
    flow.push_back(json::array({from.name(), to.name()}));
  return json{{"flow", std::move(flow)}, {"nodes", node_set_to_json(s.nodes)}};
}

void collect_items(const DataConstraint& g, std::set<std::string>& out) {
  switch (g.kind()) {
    case DataConstraint::Kind::Top:
      return;
    case DataConstraint::Kind::Atom:
      out.insert(g.atom_item());
      return;
    case DataConstraint::Kind::Neg:
      collect_items(g.body(), out);
      return;
    case DataConstraint::Kind::Conj:
      collect_items(g.left(), out);
      collect_items(g.right(), out);
      return;
  }
}

void check_universe_covers(const std::set<std::string>& items, const DataUniverse& u) {
  for (const std::string& item : items) {
    if (!u.contains(item))
      throw ValidationError("model mentions item \"" + item +
                            "\" outside the declared universe");
  }
}

json epsilon_to_json(const EpsilonConnector& e, const DataUniverse& u) {
  ValidationReport report = validate_epsilon(e);
  if (!report.ok())
    throw ValidationError("cannot serialize invalid model: " + report.to_string());
  std::set<std::string> items;
  for (const auto& [i, table] : e.behavior.ctm.table) {
    for (const ConstraintColoring& x : table) collect_items(x.constraint, items);
  }
  check_universe_covers(items, u);

  json indexes = json::array();
  for (const Index& i : e.behavior.ctm.indexes) indexes.push_back(index_to_json(i));
  json table = json::array();
  for (const auto& [i, colorings] : e.behavior.ctm.table) {
    json entry = json::array();
    for (const ConstraintColoring& x : colorings) entry.push_back(coloring_to_json(x));
    table.push_back(json{{"colorings", std::move(entry)}, {"index", index_to_json(i)}});
  }
  json next = json::array();
  for (const auto& [key, target] : e.behavior.next) {
    next.push_back(json{{"coloring", coloring_to_json(key.second)},
                        {"index", index_to_json(key.first)},
                        {"target", index_to_json(target)}});
  }
  return json{{"indexes", std::move(indexes)},
              {"initial", index_to_json(e.behavior.initial)},
              {"kind", "epsilon"},
              {"next", std::move(next)},
              {"structure", structure_to_json(e.structure)},
              {"table", std::move(table)}};
}

json alpha_to_json(const AlphaConnector& a, const DataUniverse& u) {
  ValidationReport report = validate_alpha_structure(a);
  if (!report.ok())
    throw ValidationError("cannot serialize invalid model: " + report.to_string());
  std::set<std::string> items;
  for (const Transition& t : a.automaton.transitions) collect_items(t.constraint, items);
  check_universe_covers(items, u);

  json states = json::array();
  for (const Index& q : a.automaton.states) states.push_back(index_to_json(q));
  json transitions = json::array();
  for (const Transition& t : a.automaton.transitions) {
    transitions.push_back(json{{"constraint", constraint_to_json(t.constraint)},
                               {"firing", node_set_to_json(t.firing)},
                               {"source", index_to_json(t.source)},
                               {"target", index_to_json(t.target)}});
  }
  return json{{"initial", index_to_json(a.automaton.initial)},
              {"kind", "alpha"},
              {"states", std::move(states)},
              {"structure", structure_to_json(a.structure)},
              {"transitions", std::move(transitions)}};
}

json universe_to_json(const DataUniverse& u) {
  json out = json::array();
  for (const std::string& item : u.items()) out.push_back(item);
  return out;
}

}  // namespace

std::string serialize(const ModelFile& m) {
  json body;
  if (const auto* eps = std::get_if<EpsilonConnector>(&m.model)) {
    body = epsilon_to_json(*eps, m.universe);
  } else {
    body = alpha_to_json(std::get<AlphaConnector>(m.model), m.universe);
  }
  body["universe"] = universe_to_json(m.universe);
  return std::string(kModelHeader) + "\n" + body.dump(2) + "\n";
}

namespace {

const json& need(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError("schema violation: expected object");
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("schema violation: missing key '") + key + "'");
  return *it;
}

std::string need_string(const json& j, const char* what) {
  if (!j.is_string())
    throw ParseError(std::string("schema violation: expected string for ") + what);
  return j.get<std::string>();
}

const json& need_array(const json& j, const char* what) {
  if (!j.is_array())
    throw ParseError(std::string("schema violation: expected array for ") + what);
  return j;
}

Index index_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("schema violation: index must be an object");
  if (auto it = j.find("atom"); it != j.end()) {
    return Index::atom(need_string(need(*it, "name"), "index name"),
                       need_string(need(*it, "instance"), "index instance"));
  }
  if (auto it = j.find("pair"); it != j.end()) {
    const json& arr = need_array(*it, "index pair");
    if (arr.size() != 2) throw ParseError("schema violation: index pair needs two sides");
    return Index::pair(index_from_json(arr[0]), index_from_json(arr[1]));
  }
  throw ParseError("schema violation: index must be an atom or a pair");
}

DataConstraint constraint_from_json(const json& j) {
  const json& arr = need_array(j, "constraint");
  if (arr.empty()) throw ParseError("schema violation: empty constraint node");
  std::string tag = need_string(arr[0], "constraint tag");
  if (tag == "top") {
    if (arr.size() != 1) throw ParseError("schema violation: top takes no arguments");
    return DataConstraint::top();
  }
  if (tag == "eq") {
    if (arr.size() != 3) throw ParseError("schema violation: eq takes node and item");
    return DataConstraint::atom(Node{need_string(arr[1], "eq node")},
                                need_string(arr[2], "eq item"));
  }
  if (tag == "not") {
    if (arr.size() != 2) throw ParseError("schema violation: not takes one argument");
    return DataConstraint::neg(constraint_from_json(arr[1]));
  }
  if (tag == "and") {
    if (arr.size() != 3) throw ParseError("schema violation: and takes two arguments");
    return DataConstraint::conj(constraint_from_json(arr[1]), constraint_from_json(arr[2]));
  }
  throw ParseError("schema violation: unknown constraint tag '" + tag + "'");
}

std::set<Node> node_set_from_json(const json& j, const char* what) {
  std::set<Node> out;
  for (const json& n : need_array(j, what)) out.insert(Node{need_string(n, what)});
  return out;
}

ConstraintColoring coloring_from_json(const json& j, const std::set<Node>& nodes) {
  std::set<Node> flow = node_set_from_json(need(j, "flow"), "coloring flow set");
  for (const Node& n : flow) {
    if (!nodes.count(n))
      throw ParseError("schema violation: coloring flows undeclared node " + n.name());
  }
  return ConstraintColoring{coloring_from_flow_set(nodes, flow),
                            constraint_from_json(need(j, "constraint"))};
}

ConnectorStructure structure_from_json(const json& j) {
  ConnectorStructure s;
  s.nodes = node_set_from_json(need(j, "nodes"), "structure nodes");
  for (const json& pair : need_array(need(j, "flow"), "structure flow")) {
    const json& arr = need_array(pair, "flow pair");
    if (arr.size() != 2) throw ParseError("schema violation: flow pair needs two nodes");
    s.flow.emplace(Node{need_string(arr[0], "flow node")},
                   Node{need_string(arr[1], "flow node")});
  }
  return s;
}

}  // namespace

ModelFile deserialize(std::string_view text) {
  std::size_t eol = text.find('\n');
  std::string_view header = eol == std::string_view::npos ? text : text.substr(0, eol);
  if (header != kModelHeader)
    throw ParseError("unknown model file version (expected '" + std::string(kModelHeader) +
                     "')");
  json body;
  try {
    body = json::parse(text.substr(eol + 1));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  }

  std::set<std::string> items;
  for (const json& item : need_array(need(body, "universe"), "universe"))
    items.insert(need_string(item, "universe item"));
  if (items.empty()) throw ParseError("schema violation: empty universe");
  DataUniverse u{std::move(items)};

  std::string kind = need_string(need(body, "kind"), "model kind");
  ConnectorStructure structure;
  try {
    structure = structure_from_json(need(body, "structure"));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid model file: ") + e.what());
  }

  ModelFile out{u, EpsilonConnector{{}, InitializedNextFunction{{}, {}, Index::atom("x", "x")}}};
  try {
    if (kind == "epsilon") {
      EpsilonConnector e{structure,
                         InitializedNextFunction{ConstraintCtm{structure.nodes, {}, {}},
                                                 {},
                                                 index_from_json(need(body, "initial"))}};
      for (const json& i : need_array(need(body, "indexes"), "indexes"))
        e.behavior.ctm.indexes.insert(index_from_json(i));
      for (const json& entry : need_array(need(body, "table"), "table")) {
        Index i = index_from_json(need(entry, "index"));
        std::set<ConstraintColoring> colorings;
        for (const json& x : need_array(need(entry, "colorings"), "table colorings"))
          colorings.insert(coloring_from_json(x, structure.nodes));
        if (!e.behavior.ctm.table.emplace(std::move(i), std::move(colorings)).second)
          throw ParseError("schema violation: duplicate table entry");
      }
      for (const json& entry : need_array(need(body, "next"), "next")) {
        auto key = std::make_pair(index_from_json(need(entry, "index")),
                                  coloring_from_json(need(entry, "coloring"), structure.nodes));
        if (!e.behavior.next.emplace(std::move(key),
                                     index_from_json(need(entry, "target"))).second)
          throw ParseError("schema violation: duplicate next entry");
      }
      out.model = std::move(e);
    } else if (kind == "alpha") {
      AlphaConnector a{structure,
                       ConstraintAutomaton{{}, {}, index_from_json(need(body, "initial"))}};
      for (const json& q : need_array(need(body, "states"), "states"))
        a.automaton.states.insert(index_from_json(q));
      for (const json& t : need_array(need(body, "transitions"), "transitions")) {
        a.automaton.transitions.insert(
            Transition{index_from_json(need(t, "source")),
                       node_set_from_json(need(t, "firing"), "firing set"),
                       constraint_from_json(need(t, "constraint")),
                       index_from_json(need(t, "target"))});
      }
      out.model = std::move(a);
    } else {
      throw ParseError("schema violation: unknown model kind '" + kind + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid model file: ") + e.what());
  }

  // The decoded model must stand on its own feet.
  if (const auto* eps = std::get_if<EpsilonConnector>(&out.model)) {
    ValidationReport report = validate_epsilon(*eps);
    if (!report.ok()) throw ValidationError("invalid model: " + report.to_string());
    std::set<std::string> used;
    for (const auto& [i, table] : eps->behavior.ctm.table) {
      for (const ConstraintColoring& x : table) collect_items(x.constraint, used);
    }
    check_universe_covers(used, u);
  } else {
    const auto& alpha = std::get<AlphaConnector>(out.model);
    ValidationReport report = validate_alpha_structure(alpha);
    if (!report.ok()) throw ValidationError("invalid model: " + report.to_string());
    std::set<std::string> used;
    for (const Transition& t : alpha.automaton.transitions) collect_items(t.constraint, used);
    check_universe_covers(used, u);
  }
  return out;
}

// ---------------------------------------------------------------------------
// DOT export.

DataConstraint simplify_for_display(const DataConstraint& g) {
  switch (g.kind()) {
    case DataConstraint::Kind::Top:
    case DataConstraint::Kind::Atom:
      return g;
    case DataConstraint::Kind::Neg: {
      DataConstraint body = simplify_for_display(g.body());
      if (body.kind() == DataConstraint::Kind::Neg) return body.body();
      return DataConstraint::neg(std::move(body));
    }
    case DataConstraint::Kind::Conj: {
      DataConstraint l = simplify_for_display(g.left());
      DataConstraint r = simplify_for_display(g.right());
      if (l.kind() == DataConstraint::Kind::Top) return r;
      if (r.kind() == DataConstraint::Kind::Top) return l;
      return DataConstraint::conj(std::move(l), std::move(r));
    }
  }
  throw Error("unreachable constraint kind");
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string edge_label(const std::set<Node>& firing, const DataConstraint& g,
                       bool simplify) {
  return format_node_set(firing) + ", " +
         format_constraint(simplify ? simplify_for_display(g) : g);
}

struct DotEdge {
  Index from;
  std::string label;
  Index to;
};

std::string render_dot(const std::set<Index>& states, const Index& initial,
                       const std::vector<DotEdge>& edges) {
  std::map<Index, std::string> ids;
  for (const Index& q : states) ids.emplace(q, "n" + std::to_string(ids.size()));
  std::ostringstream out;
  out << "digraph reo {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (const Index& q : states)
    out << "  " << ids.at(q) << " [label=\"" << dot_escape(q.display()) << "\"];\n";
  out << "  __start -> " << ids.at(initial) << ";\n";
  for (const DotEdge& e : edges) {
    out << "  " << ids.at(e.from) << " -> " << ids.at(e.to) << " [label=\""
        << dot_escape(e.label) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string export_dot(const AlphaConnector& a, bool simplify) {
  std::vector<DotEdge> edges;
  for (const Transition& t : a.automaton.transitions)
    edges.push_back({t.source, edge_label(t.firing, t.constraint, simplify), t.target});
  return render_dot(a.automaton.states, a.automaton.initial, edges);
}

std::string export_dot(const EpsilonConnector& e, bool simplify) {
  std::vector<DotEdge> edges;
  for (const auto& [key, target] : e.behavior.next) {
    edges.push_back(
        {key.first, edge_label(flow_set(key.second.coloring), key.second.constraint, simplify),
         target});
  }
  return render_dot(e.behavior.ctm.indexes, e.behavior.initial, edges);
}

std::string export_dot(const ModelFile& m, bool simplify) {
  if (const auto* eps = std::get_if<EpsilonConnector>(&m.model))
    return export_dot(*eps, simplify);
  return export_dot(std::get<AlphaConnector>(m.model), simplify);
}

// ---------------------------------------------------------------------------
// Traces.

Trace export_trace(const EpsilonConnector& e,
                   const std::vector<ConstraintColoring>& chosen) {
  ValidationReport report = validate_epsilon(e);
  if (!report.ok())
    throw ValidationError("export_trace requires a valid coloring model: " +
                          report.to_string());
  Trace trace;
  Index current = e.behavior.initial;
  for (std::size_t step = 0; step < chosen.size(); ++step) {
    const ConstraintColoring& x = chosen[step];
    const auto& table = e.behavior.ctm.table.at(current);
    if (!table.count(x)) {
      std::ostringstream msg;
      msg << "step " << (step + 1) << ": coloring " << format_constraint_coloring(x)
          << " is not admitted at index " << current.display();
      throw Error(msg.str());
    }
    Index after = e.behavior.next.at({current, x});
    trace.steps.push_back(TraceStep{current, x, after});
    current = after;
  }
  return trace;
}

std::string format_trace(const Trace& t) {
  json steps = json::array();
  for (const TraceStep& step : t.steps) {
    steps.push_back(json{{"after", index_to_json(step.after)},
                         {"before", index_to_json(step.before)},
                         {"coloring", coloring_to_json(step.chosen)}});
  }
  json body{{"steps", std::move(steps)}};
  return std::string(kTraceHeader) + "\n" + body.dump(2) + "\n";
}

std::vector<ConstraintColoring> resolve_steps(const EpsilonConnector& e,
                                              const DataUniverse& u,
                                              std::string_view steps_text) {
  ValidationReport report = validate_epsilon(e);
  if (!report.ok())
    throw ValidationError("steps need a valid coloring model: " + report.to_string());

  std::vector<ConstraintColoring> chosen;
  Index current = e.behavior.initial;
  for (const Line& line : logical_lines(steps_text)) {
    LineCursor cur(line.text, line.number);
    if (cur.at_end()) continue;

    cur.expect('{', "'{' opening a flow set");
    std::set<Node> flow;
    if (!cur.consume('}')) {
      flow.insert(Node{cur.ident("node name")});
      while (cur.consume(',')) flow.insert(Node{cur.ident("node name")});
      cur.expect('}', "'}'");
    }

    std::optional<DataConstraint> wanted;
    if (cur.consume(';')) {
      std::string rest = cur.rest();
      try {
        wanted = desugar(parse_constraint(rest), u);
      } catch (const ParseError& pe) {
        throw ParseError("step constraint: " + std::string(pe.what()), line.number,
                         cur.column());
      }
    } else if (!cur.at_end()) {
      throw ParseError("trailing input after flow set", line.number, cur.column());
    }

    const auto& table = e.behavior.ctm.table.at(current);
    std::vector<ConstraintColoring> candidates;
    for (const ConstraintColoring& x : table) {
      if (flow_set(x.coloring) != flow) continue;
      if (wanted && !(x.constraint == *wanted)) continue;
      candidates.push_back(x);
    }
    if (candidates.empty()) {
      std::ostringstream msg;
      msg << "line " << line.number << ": no admitted coloring with flow set "
          << format_node_set(flow) << " at index " << current.display();
      throw Error(msg.str());
    }
    if (candidates.size() > 1) {
      std::ostringstream msg;
      msg << "line " << line.number << ": flow set " << format_node_set(flow)
          << " is ambiguous at index " << current.display()
          << "; add '; constraint' to the step";
      throw Error(msg.str());
    }
    chosen.push_back(candidates.front());
    current = e.behavior.next.at({current, candidates.front()});
  }
  return chosen;
}

}  // namespace reosem
