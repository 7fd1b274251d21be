#include "reosem/constraints.hpp"

#include <cassert>
#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

namespace reosem {

DataUniverse::DataUniverse(std::set<std::string> items) : items_(std::move(items)) {
  if (items_.empty()) throw Error("data universe must be nonempty");
}

struct DataConstraint::Rep {
  Kind kind;
  std::optional<Node> node;  // Atom
  std::string item;          // Atom
  std::shared_ptr<const Rep> a;  // Neg body, Conj left
  std::shared_ptr<const Rep> b;  // Conj right
};

DataConstraint DataConstraint::top() {
  // One shared node for every top; comparisons hit the pointer fast path.
  static const auto rep = std::make_shared<const Rep>(Rep{Kind::Top, {}, {}, {}, {}});
  return DataConstraint(rep);
}

DataConstraint DataConstraint::atom(Node node, std::string item) {
  return DataConstraint(std::make_shared<const Rep>(
      Rep{Kind::Atom, std::move(node), std::move(item), {}, {}}));
}

DataConstraint DataConstraint::neg(DataConstraint body) {
  return DataConstraint(
      std::make_shared<const Rep>(Rep{Kind::Neg, {}, {}, std::move(body.rep_), {}}));
}

DataConstraint DataConstraint::conj(DataConstraint left, DataConstraint right) {
  return DataConstraint(std::make_shared<const Rep>(
      Rep{Kind::Conj, {}, {}, std::move(left.rep_), std::move(right.rep_)}));
}

DataConstraint::Kind DataConstraint::kind() const { return rep_->kind; }

const Node& DataConstraint::atom_node() const {
  assert(rep_->kind == Kind::Atom);
  return *rep_->node;
}

const std::string& DataConstraint::atom_item() const {
  assert(rep_->kind == Kind::Atom);
  return rep_->item;
}

DataConstraint DataConstraint::body() const {
  assert(rep_->kind == Kind::Neg);
  return DataConstraint(rep_->a);
}

DataConstraint DataConstraint::left() const {
  assert(rep_->kind == Kind::Conj);
  return DataConstraint(rep_->a);
}

DataConstraint DataConstraint::right() const {
  assert(rep_->kind == Kind::Conj);
  return DataConstraint(rep_->b);
}

std::strong_ordering DataConstraint::compare(const Rep* x, const Rep* y) {
  if (x == y) return std::strong_ordering::equal;
  if (auto c = static_cast<int>(x->kind) <=> static_cast<int>(y->kind); c != 0) return c;
  switch (x->kind) {
    case Kind::Top:
      return std::strong_ordering::equal;
    case Kind::Atom:
      if (auto c = *x->node <=> *y->node; c != 0) return c;
      return x->item <=> y->item;
    case Kind::Neg:
      return compare(x->a.get(), y->a.get());
    case Kind::Conj:
      if (auto c = compare(x->a.get(), y->a.get()); c != 0) return c;
      return compare(x->b.get(), y->b.get());
  }
  return std::strong_ordering::equal;
}

bool operator==(const DataConstraint& a, const DataConstraint& b) {
  return DataConstraint::compare(a.rep_.get(), b.rep_.get()) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const DataConstraint& a, const DataConstraint& b) {
  return DataConstraint::compare(a.rep_.get(), b.rep_.get());
}

struct ConstraintExpr::Rep {
  Kind kind;
  std::optional<Node> node;   // Atom node, NodeEq first
  std::optional<Node> node2;  // NodeEq second
  std::string item;           // Atom
  std::shared_ptr<const Rep> a;
  std::shared_ptr<const Rep> b;
};

ConstraintExpr ConstraintExpr::top() {
  static const auto rep = std::make_shared<const Rep>(Rep{Kind::Top, {}, {}, {}, {}, {}});
  return ConstraintExpr(rep);
}

ConstraintExpr ConstraintExpr::atom(Node node, std::string item) {
  return ConstraintExpr(std::make_shared<const Rep>(
      Rep{Kind::Atom, std::move(node), {}, std::move(item), {}, {}}));
}

ConstraintExpr ConstraintExpr::neg(ConstraintExpr body) {
  return ConstraintExpr(
      std::make_shared<const Rep>(Rep{Kind::Neg, {}, {}, {}, std::move(body.rep_), {}}));
}

ConstraintExpr ConstraintExpr::conj(ConstraintExpr left, ConstraintExpr right) {
  return ConstraintExpr(std::make_shared<const Rep>(
      Rep{Kind::Conj, {}, {}, {}, std::move(left.rep_), std::move(right.rep_)}));
}

ConstraintExpr ConstraintExpr::disj(ConstraintExpr left, ConstraintExpr right) {
  return ConstraintExpr(std::make_shared<const Rep>(
      Rep{Kind::Or, {}, {}, {}, std::move(left.rep_), std::move(right.rep_)}));
}

ConstraintExpr ConstraintExpr::implies(ConstraintExpr left, ConstraintExpr right) {
  return ConstraintExpr(std::make_shared<const Rep>(
      Rep{Kind::Implies, {}, {}, {}, std::move(left.rep_), std::move(right.rep_)}));
}

ConstraintExpr ConstraintExpr::node_eq(Node a, Node b) {
  return ConstraintExpr(std::make_shared<const Rep>(
      Rep{Kind::NodeEq, std::move(a), std::move(b), {}, {}, {}}));
}

ConstraintExpr::Kind ConstraintExpr::kind() const { return rep_->kind; }

const Node& ConstraintExpr::atom_node() const {
  assert(rep_->kind == Kind::Atom);
  return *rep_->node;
}

const std::string& ConstraintExpr::atom_item() const {
  assert(rep_->kind == Kind::Atom);
  return rep_->item;
}

ConstraintExpr ConstraintExpr::body() const {
  assert(rep_->kind == Kind::Neg);
  return ConstraintExpr(rep_->a);
}

ConstraintExpr ConstraintExpr::left() const { return ConstraintExpr(rep_->a); }

ConstraintExpr ConstraintExpr::right() const { return ConstraintExpr(rep_->b); }

const Node& ConstraintExpr::eq_first() const {
  assert(rep_->kind == Kind::NodeEq);
  return *rep_->node;
}

const Node& ConstraintExpr::eq_second() const {
  assert(rep_->kind == Kind::NodeEq);
  return *rep_->node2;
}

namespace {

// Disjunction in core shapes, by De Morgan. No simplification.
DataConstraint core_or(DataConstraint l, DataConstraint r) {
  return DataConstraint::neg(
      DataConstraint::conj(DataConstraint::neg(std::move(l)), DataConstraint::neg(std::move(r))));
}

}  // namespace

DataConstraint desugar(const ConstraintExpr& expr, const DataUniverse& u) {
  switch (expr.kind()) {
    case ConstraintExpr::Kind::Top:
      return DataConstraint::top();
    case ConstraintExpr::Kind::Atom:
      return DataConstraint::atom(expr.atom_node(), expr.atom_item());
    case ConstraintExpr::Kind::Neg:
      return DataConstraint::neg(desugar(expr.body(), u));
    case ConstraintExpr::Kind::Conj:
      return DataConstraint::conj(desugar(expr.left(), u), desugar(expr.right(), u));
    case ConstraintExpr::Kind::Or:
      return core_or(desugar(expr.left(), u), desugar(expr.right(), u));
    case ConstraintExpr::Kind::Implies:
      return core_or(DataConstraint::neg(desugar(expr.left(), u)), desugar(expr.right(), u));
    case ConstraintExpr::Kind::NodeEq: {
      // Both nodes carry the same item, as a disjunction over the universe
      // in item order, folded left. A single disjunct stays bare.
      std::optional<DataConstraint> acc;
      for (const std::string& item : u.items()) {
        DataConstraint disjunct = DataConstraint::conj(
            DataConstraint::atom(expr.eq_first(), item),
            DataConstraint::atom(expr.eq_second(), item));
        acc = acc ? core_or(std::move(*acc), std::move(disjunct)) : std::move(disjunct);
      }
      return *acc;
    }
  }
  throw Error("unreachable constraint kind");
}

bool evaluate(const DataConstraint& g, const DataAssignment& a) {
  switch (g.kind()) {
    case DataConstraint::Kind::Top:
      return true;
    case DataConstraint::Kind::Atom: {
      auto it = a.find(g.atom_node());
      return it != a.end() && it->second == g.atom_item();
    }
    case DataConstraint::Kind::Neg:
      return !evaluate(g.body(), a);
    case DataConstraint::Kind::Conj:
      return evaluate(g.left(), a) && evaluate(g.right(), a);
  }
  throw Error("unreachable constraint kind");
}

namespace {

void collect_free(const DataConstraint& g, std::set<Node>& out) {
  switch (g.kind()) {
    case DataConstraint::Kind::Top:
      return;
    case DataConstraint::Kind::Atom:
      out.insert(g.atom_node());
      return;
    case DataConstraint::Kind::Neg:
      collect_free(g.body(), out);
      return;
    case DataConstraint::Kind::Conj:
      collect_free(g.left(), out);
      collect_free(g.right(), out);
      return;
  }
}

void collect_free(const ConstraintExpr& e, std::set<Node>& out) {
  switch (e.kind()) {
    case ConstraintExpr::Kind::Top:
      return;
    case ConstraintExpr::Kind::Atom:
      out.insert(e.atom_node());
      return;
    case ConstraintExpr::Kind::Neg:
      collect_free(e.body(), out);
      return;
    case ConstraintExpr::Kind::Conj:
    case ConstraintExpr::Kind::Or:
    case ConstraintExpr::Kind::Implies:
      collect_free(e.left(), out);
      collect_free(e.right(), out);
      return;
    case ConstraintExpr::Kind::NodeEq:
      out.insert(e.eq_first());
      out.insert(e.eq_second());
      return;
  }
}

// Number of assignments when each of n slots has `options` choices, or
// nullopt as soon as the count exceeds the budget.
std::optional<std::uint64_t> checked_count(std::uint64_t options, std::size_t n,
                                           std::uint64_t budget) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (options != 0 && total > budget / options) return std::nullopt;
    total *= options;
  }
  if (total > budget) return std::nullopt;
  return total;
}

}  // namespace

std::set<Node> free_nodes(const DataConstraint& g) {
  std::set<Node> out;
  collect_free(g, out);
  return out;
}

std::set<Node> free_nodes(const ConstraintExpr& expr) {
  std::set<Node> out;
  collect_free(expr, out);
  return out;
}

bool satisfiable(const DataConstraint& g, const std::set<Node>& flow_nodes,
                 const DataUniverse& u, std::uint64_t max_assignments) {
  if (!checked_count(u.size(), flow_nodes.size(), max_assignments)) {
    std::ostringstream msg;
    msg << "satisfiability over " << flow_nodes.size() << " nodes and " << u.size()
        << " items exceeds the assignment budget of " << max_assignments;
    throw ResourceLimit(msg.str());
  }
  std::vector<Node> order(flow_nodes.begin(), flow_nodes.end());
  DataAssignment a;
  auto search = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == order.size()) return evaluate(g, a);
    for (const std::string& item : u.items()) {
      a.insert_or_assign(order[pos], item);
      if (self(self, pos + 1)) return true;
    }
    a.erase(order[pos]);
    return false;
  };
  return search(search, 0);
}

bool equivalent(const DataConstraint& g1, const DataConstraint& g2,
                const std::set<Node>& nodes, const DataUniverse& u,
                std::uint64_t max_assignments) {
  for (const Node& n : free_nodes(g1)) {
    if (!nodes.count(n)) throw Error("equivalence node set misses free node " + n.name());
  }
  for (const Node& n : free_nodes(g2)) {
    if (!nodes.count(n)) throw Error("equivalence node set misses free node " + n.name());
  }
  if (!checked_count(u.size() + 1, nodes.size(), max_assignments)) {
    std::ostringstream msg;
    msg << "equivalence over " << nodes.size() << " nodes and " << u.size()
        << " items exceeds the assignment budget of " << max_assignments;
    throw ResourceLimit(msg.str());
  }
  std::vector<Node> order(nodes.begin(), nodes.end());
  DataAssignment a;
  // Each node is either left unassigned or bound to one of the items.
  auto search = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == order.size()) return evaluate(g1, a) == evaluate(g2, a);
    if (!self(self, pos + 1)) return false;
    for (const std::string& item : u.items()) {
      a.insert_or_assign(order[pos], item);
      if (!self(self, pos + 1)) {
        a.erase(order[pos]);
        return false;
      }
    }
    a.erase(order[pos]);
    return true;
  };
  return search(search, 0);
}

// ---------------------------------------------------------------------------
// Surface syntax.

namespace {

struct Token {
  enum class Type { Ident, String, EqEq, Bang, Amp, Pipe, Arrow, LParen, RParen, End };
  Type type;
  std::string text;  // Ident name or decoded String payload
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return {Token::Type::End, "", line, col};
    char c = text_[pos_];
    if (c == '(') return advance(), Token{Token::Type::LParen, "(", line, col};
    if (c == ')') return advance(), Token{Token::Type::RParen, ")", line, col};
    if (c == '!') return advance(), Token{Token::Type::Bang, "!", line, col};
    if (c == '&') return advance(), Token{Token::Type::Amp, "&", line, col};
    if (c == '|') return advance(), Token{Token::Type::Pipe, "|", line, col};
    if (c == '-') {
      advance();
      if (pos_ < text_.size() && text_[pos_] == '>')
        return advance(), Token{Token::Type::Arrow, "->", line, col};
      throw ParseError("expected '>' after '-'", line, col);
    }
    if (c == '=') {
      advance();
      if (pos_ < text_.size() && text_[pos_] == '=')
        return advance(), Token{Token::Type::EqEq, "==", line, col};
      throw ParseError("expected '==' in constraint", line, col);
    }
    if (c == '"') return lex_string(line, col);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        name += text_[pos_];
        advance();
      }
      return {Token::Type::Ident, name, line, col};
    }
    throw ParseError(std::string("unexpected character '") + c + "' in constraint", line, col);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  Token lex_string(int line, int col) {
    advance();  // opening quote
    std::string value;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      char c = text_[pos_];
      if (c == '\\') {
        advance();
        if (pos_ >= text_.size()) break;
        c = text_[pos_];
      }
      value += c;
      advance();
    }
    if (pos_ >= text_.size()) throw ParseError("unterminated string literal", line, col);
    advance();  // closing quote
    return {Token::Type::String, value, line, col};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class ConstraintParser {
 public:
  explicit ConstraintParser(std::string_view text) : lexer_(text) { consume(); }

  ConstraintExpr parse() {
    ConstraintExpr e = parse_implies();
    expect(Token::Type::End, "end of constraint");
    return e;
  }

 private:
  void consume() { current_ = lexer_.next(); }

  void expect(Token::Type type, const std::string& what) {
    if (current_.type != type)
      throw ParseError("expected " + what, current_.line, current_.column);
  }

  ConstraintExpr parse_implies() {
    ConstraintExpr lhs = parse_or();
    if (current_.type == Token::Type::Arrow) {
      consume();
      return ConstraintExpr::implies(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  ConstraintExpr parse_or() {
    ConstraintExpr e = parse_and();
    while (current_.type == Token::Type::Pipe) {
      consume();
      e = ConstraintExpr::disj(std::move(e), parse_and());
    }
    return e;
  }

  ConstraintExpr parse_and() {
    ConstraintExpr e = parse_unary();
    while (current_.type == Token::Type::Amp) {
      consume();
      e = ConstraintExpr::conj(std::move(e), parse_unary());
    }
    return e;
  }

  ConstraintExpr parse_unary() {
    if (current_.type == Token::Type::Bang) {
      consume();
      return ConstraintExpr::neg(parse_unary());
    }
    return parse_primary();
  }

  ConstraintExpr parse_primary() {
    if (current_.type == Token::Type::LParen) {
      consume();
      ConstraintExpr e = parse_implies();
      expect(Token::Type::RParen, "')'");
      consume();
      return e;
    }
    if (current_.type == Token::Type::Ident) {
      if (current_.text == "true") {
        consume();
        return ConstraintExpr::top();
      }
      Node n{current_.text};
      consume();
      expect(Token::Type::EqEq, "'==' after node name");
      consume();
      if (current_.type == Token::Type::String) {
        std::string item = current_.text;
        consume();
        return ConstraintExpr::atom(std::move(n), std::move(item));
      }
      if (current_.type == Token::Type::Ident) {
        Node m{current_.text};
        consume();
        return ConstraintExpr::node_eq(std::move(n), std::move(m));
      }
      throw ParseError("expected item string or node name after '=='", current_.line,
                       current_.column);
    }
    throw ParseError("expected constraint", current_.line, current_.column);
  }

  Lexer lexer_;
  Token current_;
};

std::string escape_item(const std::string& item) {
  std::string out;
  for (char c : item) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// Binding strength used to decide parentheses: conj 2, neg 3, leaves 4.
int print_level(const DataConstraint& g) {
  switch (g.kind()) {
    case DataConstraint::Kind::Conj:
      return 2;
    case DataConstraint::Kind::Neg:
      return 3;
    default:
      return 4;
  }
}

void format_into(const DataConstraint& g, std::string& out) {
  switch (g.kind()) {
    case DataConstraint::Kind::Top:
      out += "true";
      return;
    case DataConstraint::Kind::Atom:
      out += g.atom_node().name();
      out += "==\"";
      out += escape_item(g.atom_item());
      out += '"';
      return;
    case DataConstraint::Kind::Neg: {
      out += '!';
      DataConstraint body = g.body();
      bool parens = print_level(body) < 3;
      if (parens) out += '(';
      format_into(body, out);
      if (parens) out += ')';
      return;
    }
    case DataConstraint::Kind::Conj: {
      DataConstraint l = g.left(), r = g.right();
      bool lp = print_level(l) < 2;
      // A right-nested conjunction needs parentheses to survive the
      // left-associative parse.
      bool rp = print_level(r) <= 2;
      if (lp) out += '(';
      format_into(l, out);
      if (lp) out += ')';
      out += " & ";
      if (rp) out += '(';
      format_into(r, out);
      if (rp) out += ')';
      return;
    }
  }
}

}  // namespace

ConstraintExpr parse_constraint(std::string_view text) {
  return ConstraintParser(text).parse();
}

std::string format_constraint(const DataConstraint& g) {
  std::string out;
  format_into(g, out);
  return out;
}

}  // namespace reosem
