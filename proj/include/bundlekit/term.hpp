#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bundlekit/worldset.hpp"

namespace bundlekit {

struct Agent {
  std::string name;
  int arity = 1;
};

// Declared agents with arities; terms refer to agents by index.
class AgentTable {
 public:
  int declare(std::string name, int arity);
  int id_of(std::string_view name) const;  // -1 when undeclared
  const Agent& agent(int id) const { return agents_.at(id); }
  int size() const { return static_cast<int>(agents_.size()); }
  bool compatible_with(const AgentTable& other) const;

 private:
  std::vector<Agent> agents_;
};

enum class TermKind { Plus, Minus, Nabla, Delta, Or, And };

struct BundleTerm;
using TermPtr = std::shared_ptr<const BundleTerm>;

// Bundle term: (+)/(-) leaves, box-like Nabla and diamond-like Delta nodes,
// plus Or/And read directly as the binary identity-agent forms.
struct BundleTerm {
  TermKind kind;
  int agent = -1;  // Nabla/Delta only
  std::vector<TermPtr> args;
};

TermPtr plus_leaf();
TermPtr minus_leaf();
TermPtr nabla(int agent, std::vector<TermPtr> args);
TermPtr delta(int agent, std::vector<TermPtr> args);
TermPtr box(int agent, TermPtr arg);
TermPtr diamond(int agent, TermPtr arg);
TermPtr or_term(TermPtr l, TermPtr r);
TermPtr and_term(TermPtr l, TermPtr r);

bool term_equal(const TermPtr& a, const TermPtr& b);
int term_modal_depth(const TermPtr& t);

enum class FormulaKind { Prop, Top, Neg, Conj, Circle };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  std::string prop;  // Prop with meta < 0
  int meta = -1;     // metavariable slot used by axiom schemas
  std::vector<FormulaPtr> args;
};

FormulaPtr prop(std::string name);
FormulaPtr meta_prop(int slot);
FormulaPtr top();
FormulaPtr neg(FormulaPtr f);
FormulaPtr conj(FormulaPtr l, FormulaPtr r);
FormulaPtr circle(FormulaPtr f);
FormulaPtr filled_circle(FormulaPtr f);  // sugar for circle(neg(f))
FormulaPtr disj(FormulaPtr l, FormulaPtr r);
FormulaPtr implies(FormulaPtr l, FormulaPtr r);
FormulaPtr bottom();

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);
int formula_modal_depth(const FormulaPtr& f);
std::vector<std::string> formula_props(const FormulaPtr& f);

// Membership in the pure-plus / pure-minus / cross grammars; Unknown when the
// term fits none of them.
enum class ConvexClass { Plus, Minus, Cross, Unknown };

ConvexClass classify_convex_syntactic(const TermPtr& t);
std::string convex_class_name(ConvexClass c);

TermPtr parse_term(std::string_view text, const AgentTable& agents);
FormulaPtr parse_formula(std::string_view text);
std::string render(const TermPtr& t, const AgentTable& agents);
std::string render(const FormulaPtr& f);

}  // namespace bundlekit
