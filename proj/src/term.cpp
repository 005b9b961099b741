#include "bundlekit/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace bundlekit {

int AgentTable::declare(std::string name, int arity) {
  if (arity < 1) throw ModelError("agent arity must be >= 1: " + name);
  if (id_of(name) >= 0) throw ModelError("agent redeclared: " + name);
  agents_.push_back(Agent{std::move(name), arity});
  return static_cast<int>(agents_.size()) - 1;
}

int AgentTable::id_of(std::string_view name) const {
  for (std::size_t i = 0; i < agents_.size(); ++i)
    if (agents_[i].name == name) return static_cast<int>(i);
  return -1;
}

bool AgentTable::compatible_with(const AgentTable& other) const {
  for (const auto& a : agents_) {
    int id = other.id_of(a.name);
    if (id >= 0 && other.agent(id).arity != a.arity) return false;
  }
  return true;
}

namespace {
TermPtr make_term(TermKind k, int agent, std::vector<TermPtr> args) {
  auto t = std::make_shared<BundleTerm>();
  t->kind = k;
  t->agent = agent;
  t->args = std::move(args);
  return t;
}
}  // namespace

TermPtr plus_leaf() {
  static const TermPtr t = make_term(TermKind::Plus, -1, {});
  return t;
}
TermPtr minus_leaf() {
  static const TermPtr t = make_term(TermKind::Minus, -1, {});
  return t;
}
TermPtr nabla(int agent, std::vector<TermPtr> args) {
  return make_term(TermKind::Nabla, agent, std::move(args));
}
TermPtr delta(int agent, std::vector<TermPtr> args) {
  return make_term(TermKind::Delta, agent, std::move(args));
}
TermPtr box(int agent, TermPtr arg) { return nabla(agent, {std::move(arg)}); }
TermPtr diamond(int agent, TermPtr arg) { return delta(agent, {std::move(arg)}); }
TermPtr or_term(TermPtr l, TermPtr r) {
  return make_term(TermKind::Or, -1, {std::move(l), std::move(r)});
}
TermPtr and_term(TermPtr l, TermPtr r) {
  return make_term(TermKind::And, -1, {std::move(l), std::move(r)});
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->agent != b->agent ||
      a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!term_equal(a->args[i], b->args[i])) return false;
  return true;
}

int term_modal_depth(const TermPtr& t) {
  int sub = 0;
  for (const auto& a : t->args) sub = std::max(sub, term_modal_depth(a));
  bool modal = t->kind == TermKind::Nabla || t->kind == TermKind::Delta;
  return sub + (modal ? 1 : 0);
}

namespace {
FormulaPtr make_formula(FormulaKind k, std::string p, int meta,
                        std::vector<FormulaPtr> args) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->prop = std::move(p);
  f->meta = meta;
  f->args = std::move(args);
  return f;
}
}  // namespace

FormulaPtr prop(std::string name) {
  return make_formula(FormulaKind::Prop, std::move(name), -1, {});
}
FormulaPtr meta_prop(int slot) {
  return make_formula(FormulaKind::Prop, "$" + std::to_string(slot), slot, {});
}
FormulaPtr top() {
  static const FormulaPtr f = make_formula(FormulaKind::Top, "", -1, {});
  return f;
}
FormulaPtr neg(FormulaPtr f) {
  return make_formula(FormulaKind::Neg, "", -1, {std::move(f)});
}
FormulaPtr conj(FormulaPtr l, FormulaPtr r) {
  return make_formula(FormulaKind::Conj, "", -1, {std::move(l), std::move(r)});
}
FormulaPtr circle(FormulaPtr f) {
  return make_formula(FormulaKind::Circle, "", -1, {std::move(f)});
}
FormulaPtr filled_circle(FormulaPtr f) { return circle(neg(std::move(f))); }
FormulaPtr disj(FormulaPtr l, FormulaPtr r) {
  return neg(conj(neg(std::move(l)), neg(std::move(r))));
}
FormulaPtr implies(FormulaPtr l, FormulaPtr r) {
  return neg(conj(std::move(l), neg(std::move(r))));
}
FormulaPtr bottom() { return neg(top()); }

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->prop != b->prop || a->meta != b->meta ||
      a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!formula_equal(a->args[i], b->args[i])) return false;
  return true;
}

int formula_modal_depth(const FormulaPtr& f) {
  int sub = 0;
  for (const auto& a : f->args) sub = std::max(sub, formula_modal_depth(a));
  return sub + (f->kind == FormulaKind::Circle ? 1 : 0);
}

std::vector<std::string> formula_props(const FormulaPtr& f) {
  std::set<std::string> seen;
  std::vector<const Formula*> stack{f.get()};
  while (!stack.empty()) {
    const Formula* cur = stack.back();
    stack.pop_back();
    if (cur->kind == FormulaKind::Prop && cur->meta < 0) seen.insert(cur->prop);
    for (const auto& a : cur->args) stack.push_back(a.get());
  }
  return {seen.begin(), seen.end()};
}

namespace {

bool pure_leaves(const TermPtr& t, TermKind leaf) {
  switch (t->kind) {
    case TermKind::Plus:
      return leaf == TermKind::Plus;
    case TermKind::Minus:
      return leaf == TermKind::Minus;
    default:
      return std::all_of(t->args.begin(), t->args.end(),
                         [&](const TermPtr& a) { return pure_leaves(a, leaf); });
  }
}

bool in_cross_grammar(const TermPtr& t) {
  if (pure_leaves(t, TermKind::Plus) || pure_leaves(t, TermKind::Minus))
    return true;
  if (t->kind == TermKind::And)
    return in_cross_grammar(t->args[0]) && in_cross_grammar(t->args[1]);
  if (t->kind == TermKind::Nabla && t->args.size() == 1)
    return in_cross_grammar(t->args[0]);
  return false;
}

}  // namespace

ConvexClass classify_convex_syntactic(const TermPtr& t) {
  if (pure_leaves(t, TermKind::Plus)) return ConvexClass::Plus;
  if (pure_leaves(t, TermKind::Minus)) return ConvexClass::Minus;
  if (in_cross_grammar(t)) return ConvexClass::Cross;
  return ConvexClass::Unknown;
}

std::string convex_class_name(ConvexClass c) {
  switch (c) {
    case ConvexClass::Plus: return "Plus";
    case ConvexClass::Minus: return "Minus";
    case ConvexClass::Cross: return "Cross";
    default: return "Unknown";
  }
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!eat(c)) throw ParseError(std::string("expected ") + what, static_cast<int>(pos));
  }
  bool starts_ident() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) throw ParseError("expected identifier", static_cast<int>(pos));
    return std::string(text.substr(start, pos - start));
  }
};

class TermParser {
 public:
  TermParser(std::string_view text, const AgentTable& agents)
      : cur_{text}, agents_(agents) {}

  TermPtr parse() {
    TermPtr t = parse_or();
    if (!cur_.at_end())
      throw ParseError("trailing input", static_cast<int>(cur_.pos));
    return t;
  }

 private:
  Cursor cur_;
  const AgentTable& agents_;

  int agent_id(const std::string& name) {
    int id = agents_.id_of(name);
    if (id < 0)
      throw ParseError("undeclared agent '" + name + "'", static_cast<int>(cur_.pos));
    return id;
  }

  TermPtr parse_or() {
    TermPtr t = parse_and();
    while (cur_.peek() == '|') {
      cur_.eat('|');
      t = or_term(t, parse_and());
    }
    return t;
  }

  TermPtr parse_and() {
    TermPtr t = parse_unary();
    while (cur_.peek() == '&') {
      cur_.eat('&');
      t = and_term(t, parse_unary());
    }
    return t;
  }

  // "(+)" and "(-)" are leaves; a bare "(" opens a grouped term.
  TermPtr parse_unary() {
    char c = cur_.peek();
    if (c == '(') {
      std::size_t save = cur_.pos;
      cur_.eat('(');
      char inner = cur_.peek();
      if ((inner == '+' || inner == '-')) {
        cur_.eat(inner);
        if (cur_.eat(')')) return inner == '+' ? plus_leaf() : minus_leaf();
      }
      cur_.pos = save;
      cur_.eat('(');
      TermPtr t = parse_or();
      cur_.expect(')', "')'");
      return t;
    }
    if (c == '[') {
      cur_.eat('[');
      std::string name = cur_.ident();
      cur_.expect(']', "']'");
      int id = agent_id(name);
      require_arity(id, 1, name);
      return box(id, parse_unary());
    }
    if (c == '<') {
      cur_.eat('<');
      std::string name = cur_.ident();
      cur_.expect('>', "'>'");
      int id = agent_id(name);
      require_arity(id, 1, name);
      return diamond(id, parse_unary());
    }
    if (c == 'N' || c == 'D') {
      bool is_nabla = c == 'N';
      cur_.eat(c);
      std::string name = cur_.ident();
      int id = agent_id(name);
      cur_.expect('(', "'('");
      std::vector<TermPtr> args;
      args.push_back(parse_or());
      while (cur_.eat(',')) args.push_back(parse_or());
      cur_.expect(')', "')'");
      if (static_cast<int>(args.size()) != agents_.agent(id).arity)
        throw ParseError("agent '" + name + "' has arity " +
                             std::to_string(agents_.agent(id).arity) + ", got " +
                             std::to_string(args.size()) + " arguments",
                         static_cast<int>(cur_.pos));
      return is_nabla ? nabla(id, std::move(args)) : delta(id, std::move(args));
    }
    throw ParseError("expected term", static_cast<int>(cur_.pos));
  }

  void require_arity(int id, int arity, const std::string& name) {
    if (agents_.agent(id).arity != arity)
      throw ParseError("agent '" + name + "' is not unary", static_cast<int>(cur_.pos));
  }
};

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : cur_{text} {}

  FormulaPtr parse() {
    FormulaPtr f = parse_conj();
    if (!cur_.at_end())
      throw ParseError("trailing input", static_cast<int>(cur_.pos));
    return f;
  }

 private:
  Cursor cur_;

  FormulaPtr parse_conj() {
    FormulaPtr f = parse_prefix();
    while (cur_.peek() == '&') {
      cur_.eat('&');
      f = conj(f, parse_prefix());
    }
    return f;
  }

  FormulaPtr parse_prefix() {
    char c = cur_.peek();
    if (c == '~') {
      cur_.eat('~');
      return neg(parse_prefix());
    }
    if (cur_.starts_ident()) {
      std::size_t save = cur_.pos;
      std::string name = cur_.ident();
      if (name == "O") return circle(parse_prefix());
      if (name == "F") return filled_circle(parse_prefix());
      if (name == "T") return top();
      cur_.pos = save;
    }
    return parse_atom();
  }

  FormulaPtr parse_atom() {
    if (cur_.eat('(')) {
      FormulaPtr f = parse_conj();
      cur_.expect(')', "')'");
      return f;
    }
    if (!cur_.starts_ident())
      throw ParseError("expected formula", static_cast<int>(cur_.pos));
    return prop(cur_.ident());
  }
};

enum TermLevel { kOrLevel = 0, kAndLevel = 1, kUnaryLevel = 2 };

void render_term(const TermPtr& t, const AgentTable& agents, int level,
                 std::string& out) {
  switch (t->kind) {
    case TermKind::Plus:
      out += "(+)";
      return;
    case TermKind::Minus:
      out += "(-)";
      return;
    case TermKind::Or: {
      bool paren = level > kOrLevel;
      if (paren) out += '(';
      render_term(t->args[0], agents, kOrLevel, out);
      out += " | ";
      render_term(t->args[1], agents, kAndLevel, out);
      if (paren) out += ')';
      return;
    }
    case TermKind::And: {
      bool paren = level > kAndLevel;
      if (paren) out += '(';
      render_term(t->args[0], agents, kAndLevel, out);
      out += " & ";
      render_term(t->args[1], agents, kUnaryLevel, out);
      if (paren) out += ')';
      return;
    }
    case TermKind::Nabla:
    case TermKind::Delta: {
      const Agent& a = agents.agent(t->agent);
      bool is_nabla = t->kind == TermKind::Nabla;
      if (a.arity == 1) {
        out += is_nabla ? "[" : "<";
        out += a.name;
        out += is_nabla ? "]" : ">";
        render_term(t->args[0], agents, kUnaryLevel, out);
      } else {
        out += is_nabla ? "N" : "D";
        out += a.name;
        out += '(';
        for (std::size_t i = 0; i < t->args.size(); ++i) {
          if (i) out += ", ";
          render_term(t->args[i], agents, kOrLevel, out);
        }
        out += ')';
      }
      return;
    }
  }
}

enum FormulaLevel { kConjLevel = 0, kPrefixLevel = 1 };

void render_formula(const FormulaPtr& f, int level, std::string& out) {
  switch (f->kind) {
    case FormulaKind::Prop:
      out += f->prop;
      return;
    case FormulaKind::Top:
      out += 'T';
      return;
    case FormulaKind::Neg:
      out += '~';
      render_formula(f->args[0], kPrefixLevel, out);
      return;
    case FormulaKind::Conj: {
      bool paren = level > kConjLevel;
      if (paren) out += '(';
      render_formula(f->args[0], kConjLevel, out);
      out += " & ";
      render_formula(f->args[1], kPrefixLevel, out);
      if (paren) out += ')';
      return;
    }
    case FormulaKind::Circle: {
      const FormulaPtr& arg = f->args[0];
      if (arg->kind == FormulaKind::Neg) {
        out += "F ";
        render_formula(arg->args[0], kPrefixLevel, out);
      } else {
        out += "O ";
        render_formula(arg, kPrefixLevel, out);
      }
      return;
    }
  }
}

}  // namespace

TermPtr parse_term(std::string_view text, const AgentTable& agents) {
  return TermParser(text, agents).parse();
}

FormulaPtr parse_formula(std::string_view text) {
  return FormulaParser(text).parse();
}

std::string render(const TermPtr& t, const AgentTable& agents) {
  std::string out;
  render_term(t, agents, kOrLevel, out);
  return out;
}

std::string render(const FormulaPtr& f) {
  std::string out;
  render_formula(f, kConjLevel, out);
  return out;
}

}  // namespace bundlekit
