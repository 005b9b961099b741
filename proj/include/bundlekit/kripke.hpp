#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bundlekit/term.hpp"
#include "bundlekit/worldset.hpp"

namespace bundlekit {

enum class ModelClass { S5, KD45, S4dot2, S4F, Serial, Arbitrary };

ModelClass parse_model_class(std::string_view name);
std::string model_class_name(ModelClass c);

// Finite Kripke model over dense world indices. Relations are stored per
// agent as successor tuples: succ[a][w] lists the (rho(a))-tuples v with
// (w, v...) in R_a.
struct KripkeModel {
  int n_worlds = 0;
  AgentTable agents;
  std::vector<std::vector<std::vector<std::vector<int>>>> succ;
  std::map<std::string, WorldSet> valuation;
  std::vector<std::string> world_names;  // empty -> "0", "1", ...

  void init(int worlds, AgentTable table);
  void add_edge(int agent, const std::vector<int>& tuple);  // (w, v1..vn)
  WorldSet unary_succ(int agent, int w) const;
  void set_unary(int agent, int w, WorldSet targets);
  std::string world_name(int w) const;
  int world_index(std::string_view name) const;  // -1 when unknown
  void check_valid() const;
};

// Minimal (satisfy, falsify) pair; ordering gives the canonical NbhSet order.
struct NbhPair {
  WorldSet pos = 0;
  WorldSet neg = 0;
  friend auto operator<=>(const NbhPair&, const NbhPair&) = default;
};

// Deduplicated, sorted family of pairs.
using NbhSet = std::vector<NbhPair>;

bool term_sat(const KripkeModel& m, int w, WorldSet x, const TermPtr& t);
WorldSet eval_formula(const KripkeModel& m, const TermPtr& tau,
                      const FormulaPtr& f, const Caps& caps = {});
NbhSet nbh(const KripkeModel& m, int w, const TermPtr& t, const Caps& caps = {});
WorldSet dom(const KripkeModel& m, int w, const TermPtr& t);
std::vector<WorldSet> completion(const KripkeModel& m, int w, const TermPtr& t,
                                 const Caps& caps = {});

struct ClassCheckResult {
  bool ok = false;
  std::string detail;             // violating tuple on failure
  std::optional<WorldSet> s4f_x;  // witness block for S4F
};

ClassCheckResult check_model_class(const KripkeModel& m, int agent, ModelClass c);

struct ConvexityResult {
  bool convex = true;
  int world = -1;
  NbhPair first, second;  // offending pair on failure
};

ConvexityResult is_convex(const KripkeModel& m, const TermPtr& t,
                          const Caps& caps = {});

// Reindexes the right model's worlds by +left.n_worlds; agent tables are
// merged by name (arities must agree).
KripkeModel disjoint_union(const KripkeModel& left, const KripkeModel& right);

WorldSet valuation_of(const KripkeModel& m, const std::string& p);

}  // namespace bundlekit
