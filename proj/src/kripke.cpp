#include "bundlekit/kripke.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bundlekit {

ModelClass parse_model_class(std::string_view name) {
  if (name == "S5") return ModelClass::S5;
  if (name == "KD45") return ModelClass::KD45;
  if (name == "S4.2" || name == "S4dot2") return ModelClass::S4dot2;
  if (name == "S4F") return ModelClass::S4F;
  if (name == "serial" || name == "Serial") return ModelClass::Serial;
  if (name == "arbitrary" || name == "Arbitrary") return ModelClass::Arbitrary;
  throw ModelError("unknown model class: " + std::string(name));
}

std::string model_class_name(ModelClass c) {
  switch (c) {
    case ModelClass::S5: return "S5";
    case ModelClass::KD45: return "KD45";
    case ModelClass::S4dot2: return "S4.2";
    case ModelClass::S4F: return "S4F";
    case ModelClass::Serial: return "serial";
    default: return "arbitrary";
  }
}

void KripkeModel::init(int worlds, AgentTable table) {
  if (worlds < 1 || worlds > kMaxWorlds)
    throw ModelError("world count out of range: " + std::to_string(worlds));
  n_worlds = worlds;
  agents = std::move(table);
  succ.assign(agents.size(), std::vector<std::vector<std::vector<int>>>(worlds));
}

void KripkeModel::add_edge(int agent, const std::vector<int>& tuple) {
  const Agent& a = agents.agent(agent);
  if (static_cast<int>(tuple.size()) != a.arity + 1)
    throw ModelError("relation tuple for '" + a.name + "' must have " +
                     std::to_string(a.arity + 1) + " entries");
  for (int w : tuple)
    if (w < 0 || w >= n_worlds)
      throw ModelError("world index out of range in relation tuple");
  std::vector<int> rest(tuple.begin() + 1, tuple.end());
  auto& list = succ[agent][tuple[0]];
  if (std::find(list.begin(), list.end(), rest) == list.end())
    list.push_back(std::move(rest));
}

WorldSet KripkeModel::unary_succ(int agent, int w) const {
  if (agents.agent(agent).arity != 1)
    throw ModelError("agent '" + agents.agent(agent).name + "' is not unary");
  WorldSet s = 0;
  for (const auto& t : succ[agent][w]) s |= world_bit(t[0]);
  return s;
}

void KripkeModel::set_unary(int agent, int w, WorldSet targets) {
  if (agents.agent(agent).arity != 1)
    throw ModelError("agent '" + agents.agent(agent).name + "' is not unary");
  succ[agent][w].clear();
  for (int v : ws_elements(targets)) succ[agent][w].push_back({v});
}

std::string KripkeModel::world_name(int w) const {
  if (w >= 0 && w < static_cast<int>(world_names.size())) return world_names[w];
  return std::to_string(w);
}

int KripkeModel::world_index(std::string_view name) const {
  for (std::size_t i = 0; i < world_names.size(); ++i)
    if (world_names[i] == name) return static_cast<int>(i);
  return -1;
}

void KripkeModel::check_valid() const {
  for (const auto& [p, s] : valuation)
    if (!ws_subset(s, ws_full(n_worlds)))
      throw ModelError("valuation of '" + p + "' mentions unknown worlds");
}

WorldSet valuation_of(const KripkeModel& m, const std::string& p) {
  auto it = m.valuation.find(p);
  if (it == m.valuation.end()) throw ModelError("unknown proposition: " + p);
  return it->second;
}

bool term_sat(const KripkeModel& m, int w, WorldSet x, const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Plus:
      return ws_contains(x, w);
    case TermKind::Minus:
      return !ws_contains(x, w);
    case TermKind::Or:
      return term_sat(m, w, x, t->args[0]) || term_sat(m, w, x, t->args[1]);
    case TermKind::And:
      return term_sat(m, w, x, t->args[0]) && term_sat(m, w, x, t->args[1]);
    case TermKind::Nabla: {
      for (const auto& tuple : m.succ.at(t->agent)[w]) {
        bool some = false;
        for (std::size_t i = 0; i < tuple.size() && !some; ++i)
          some = term_sat(m, tuple[i], x, t->args[i]);
        if (!some) return false;
      }
      return true;
    }
    case TermKind::Delta: {
      for (const auto& tuple : m.succ.at(t->agent)[w]) {
        bool all = true;
        for (std::size_t i = 0; i < tuple.size() && all; ++i)
          all = term_sat(m, tuple[i], x, t->args[i]);
        if (all) return true;
      }
      return false;
    }
  }
  return false;
}

namespace {

void check_agent(const KripkeModel& m, const TermPtr& t) {
  if ((t->kind == TermKind::Nabla || t->kind == TermKind::Delta) &&
      (t->agent < 0 || t->agent >= m.agents.size()))
    throw ModelError("term mentions an agent the model does not declare");
  for (const auto& a : t->args) check_agent(m, a);
}

NbhSet dedup(NbhSet pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

NbhPair join(NbhPair a, NbhPair b) { return {a.pos | b.pos, a.neg | b.neg}; }

struct NbhComputer {
  const KripkeModel& m;
  const Caps& caps;
  std::map<std::pair<const BundleTerm*, int>, NbhSet> memo;

  const NbhSet& run(int w, const TermPtr& t) {
    auto key = std::make_pair(t.get(), w);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    NbhSet out = compute(w, t);
    if (out.size() > caps.max_nbh_pairs)
      throw CapExceeded("neighborhood pair cap exceeded");
    return memo.emplace(key, std::move(out)).first->second;
  }

  // Componentwise product-join of accumulated pairs against the choices for
  // one more successor tuple.
  NbhSet extend(const NbhSet& acc, const NbhSet& options) {
    NbhSet next;
    next.reserve(acc.size() * options.size());
    for (const auto& p : acc)
      for (const auto& q : options) {
        next.push_back(join(p, q));
        if (next.size() > caps.max_nbh_pairs)
          throw CapExceeded("neighborhood pair cap exceeded");
      }
    return dedup(std::move(next));
  }

  NbhSet compute(int w, const TermPtr& t) {
    switch (t->kind) {
      case TermKind::Plus:
        return {NbhPair{world_bit(w), 0}};
      case TermKind::Minus:
        return {NbhPair{0, world_bit(w)}};
      case TermKind::Or: {
        NbhSet out = run(w, t->args[0]);
        const NbhSet& r = run(w, t->args[1]);
        out.insert(out.end(), r.begin(), r.end());
        return dedup(std::move(out));
      }
      case TermKind::And:
        return extend(run(w, t->args[0]), run(w, t->args[1]));
      case TermKind::Nabla: {
        NbhSet acc{NbhPair{}};  // empty join over no successors
        for (const auto& tuple : m.succ.at(t->agent)[w]) {
          NbhSet options;
          for (std::size_t i = 0; i < tuple.size(); ++i) {
            const NbhSet& r = run(tuple[i], t->args[i]);
            options.insert(options.end(), r.begin(), r.end());
          }
          options = dedup(std::move(options));
          acc = extend(acc, options);
          if (acc.empty()) break;
        }
        return acc;
      }
      case TermKind::Delta: {
        NbhSet out;
        for (const auto& tuple : m.succ.at(t->agent)[w]) {
          NbhSet acc{NbhPair{}};
          for (std::size_t i = 0; i < tuple.size(); ++i) {
            acc = extend(acc, run(tuple[i], t->args[i]));
            if (acc.empty()) break;
          }
          out.insert(out.end(), acc.begin(), acc.end());
          if (out.size() > caps.max_nbh_pairs)
            throw CapExceeded("neighborhood pair cap exceeded");
        }
        return dedup(std::move(out));
      }
    }
    return {};
  }
};

WorldSet dom_rec(const KripkeModel& m, int w, const TermPtr& t,
                 std::map<std::pair<const BundleTerm*, int>, WorldSet>& memo) {
  auto key = std::make_pair(t.get(), w);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  WorldSet out = 0;
  switch (t->kind) {
    case TermKind::Plus:
    case TermKind::Minus:
      out = world_bit(w);
      break;
    case TermKind::Or:
    case TermKind::And:
      out = dom_rec(m, w, t->args[0], memo) | dom_rec(m, w, t->args[1], memo);
      break;
    case TermKind::Nabla:
    case TermKind::Delta:
      for (const auto& tuple : m.succ.at(t->agent)[w])
        for (std::size_t i = 0; i < tuple.size(); ++i)
          out |= dom_rec(m, tuple[i], t->args[i], memo);
      break;
  }
  memo.emplace(key, out);
  return out;
}

}  // namespace

NbhSet nbh(const KripkeModel& m, int w, const TermPtr& t, const Caps& caps) {
  check_agent(m, t);
  NbhComputer c{m, caps, {}};
  return c.run(w, t);
}

WorldSet dom(const KripkeModel& m, int w, const TermPtr& t) {
  check_agent(m, t);
  std::map<std::pair<const BundleTerm*, int>, WorldSet> memo;
  return dom_rec(m, w, t, memo);
}

std::vector<WorldSet> completion(const KripkeModel& m, int w, const TermPtr& t,
                                 const Caps& caps) {
  WorldSet d = dom(m, w, t);
  if (ws_size(d) > caps.max_completion_dom)
    throw CapExceeded("domain too large for completion enumeration");
  NbhSet pairs = nbh(m, w, t, caps);
  std::vector<WorldSet> out;
  ws_for_each_subset(d, [&](WorldSet z) {
    WorldSet rest = d & ~z;
    for (const auto& p : pairs)
      if (ws_subset(p.pos, z) && ws_subset(p.neg, rest)) {
        out.push_back(z);
        break;
      }
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

WorldSet eval_formula(const KripkeModel& m, const TermPtr& tau,
                      const FormulaPtr& f, const Caps& caps) {
  switch (f->kind) {
    case FormulaKind::Prop:
      if (f->meta >= 0) throw ModelError("metavariable in a concrete formula");
      return valuation_of(m, f->prop);
    case FormulaKind::Top:
      return ws_full(m.n_worlds);
    case FormulaKind::Neg:
      return ws_full(m.n_worlds) & ~eval_formula(m, tau, f->args[0], caps);
    case FormulaKind::Conj:
      return eval_formula(m, tau, f->args[0], caps) &
             eval_formula(m, tau, f->args[1], caps);
    case FormulaKind::Circle: {
      WorldSet inner = eval_formula(m, tau, f->args[0], caps);
      WorldSet out = 0;
      for (int w = 0; w < m.n_worlds; ++w)
        if (term_sat(m, w, inner, tau)) out |= world_bit(w);
      return out;
    }
  }
  return 0;
}

namespace {

ClassCheckResult fail(const KripkeModel& m, const std::string& what, int w,
                      int u = -1, int v = -1) {
  ClassCheckResult r;
  r.ok = false;
  r.detail = what + " at " + m.world_name(w);
  if (u >= 0) r.detail += ", " + m.world_name(u);
  if (v >= 0) r.detail += ", " + m.world_name(v);
  return r;
}

ClassCheckResult check_serial(const KripkeModel& m, int a) {
  for (int w = 0; w < m.n_worlds; ++w)
    if (m.unary_succ(a, w) == 0) return fail(m, "no successor", w);
  return {true, "", {}};
}

ClassCheckResult check_transitive(const KripkeModel& m, int a) {
  for (int w = 0; w < m.n_worlds; ++w)
    for (int u : ws_elements(m.unary_succ(a, w)))
      if (!ws_subset(m.unary_succ(a, u), m.unary_succ(a, w)))
        return fail(m, "not transitive", w, u);
  return {true, "", {}};
}

}  // namespace

ClassCheckResult check_model_class(const KripkeModel& m, int agent, ModelClass c) {
  if (m.agents.agent(agent).arity != 1)
    throw ModelError("model class checks require a unary agent");
  switch (c) {
    case ModelClass::Arbitrary:
      return {true, "", {}};
    case ModelClass::Serial:
      return check_serial(m, agent);
    case ModelClass::S5: {
      for (int w = 0; w < m.n_worlds; ++w)
        if (!ws_contains(m.unary_succ(agent, w), w))
          return fail(m, "not reflexive", w);
      for (int w = 0; w < m.n_worlds; ++w)
        for (int u : ws_elements(m.unary_succ(agent, w)))
          if (!ws_contains(m.unary_succ(agent, u), w))
            return fail(m, "not symmetric", w, u);
      return check_transitive(m, agent);
    }
    case ModelClass::KD45: {
      if (auto r = check_serial(m, agent); !r.ok) return r;
      if (auto r = check_transitive(m, agent); !r.ok) return r;
      for (int w = 0; w < m.n_worlds; ++w) {
        WorldSet s = m.unary_succ(agent, w);
        for (int u : ws_elements(s))
          if (!ws_subset(s, m.unary_succ(agent, u)))
            return fail(m, "not euclidean", w, u);
      }
      return {true, "", {}};
    }
    case ModelClass::S4dot2: {
      for (int w = 0; w < m.n_worlds; ++w)
        if (!ws_contains(m.unary_succ(agent, w), w))
          return fail(m, "not reflexive", w);
      if (auto r = check_transitive(m, agent); !r.ok) return r;
      for (int w = 0; w < m.n_worlds; ++w) {
        WorldSet s = m.unary_succ(agent, w);
        for (int u : ws_elements(s))
          for (int v : ws_elements(s))
            if ((m.unary_succ(agent, u) & m.unary_succ(agent, v)) == 0)
              return fail(m, "not confluent", w, u, v);
      }
      return {true, "", {}};
    }
    case ModelClass::S4F: {
      // R = (W\X)^2 u (W x X) forces R(w) = X for w in X and R(w) = W
      // otherwise, so candidates are the successor sets plus the trivial
      // blocks.
      WorldSet full = ws_full(m.n_worlds);
      std::set<WorldSet> candidates{0, full};
      for (int w = 0; w < m.n_worlds; ++w)
        candidates.insert(m.unary_succ(agent, w));
      for (WorldSet x : candidates) {
        bool match = true;
        for (int w = 0; w < m.n_worlds && match; ++w) {
          WorldSet expect = ws_contains(x, w) ? x : full;
          match = m.unary_succ(agent, w) == expect;
        }
        if (match) {
          ClassCheckResult r;
          r.ok = true;
          r.s4f_x = x;
          return r;
        }
      }
      return fail(m, "no two-block decomposition", 0);
    }
  }
  return {false, "unreachable", {}};
}

ConvexityResult is_convex(const KripkeModel& m, const TermPtr& t,
                          const Caps& caps) {
  for (int w = 0; w < m.n_worlds; ++w) {
    NbhSet pairs = nbh(m, w, t, caps);
    NbhSet disjoint;
    for (const auto& p : pairs)
      if ((p.pos & p.neg) == 0) disjoint.push_back(p);
    for (const auto& p : disjoint)
      for (const auto& q : disjoint) {
        if ((p.pos & q.neg) != 0) continue;
        NbhPair mix{p.pos, q.neg};
        if (!std::binary_search(pairs.begin(), pairs.end(), mix))
          return {false, w, p, q};
      }
  }
  return {};
}

KripkeModel disjoint_union(const KripkeModel& left, const KripkeModel& right) {
  if (!left.agents.compatible_with(right.agents))
    throw ModelError("agent tables disagree on arities");
  AgentTable merged = left.agents;
  for (int i = 0; i < right.agents.size(); ++i) {
    const Agent& a = right.agents.agent(i);
    if (merged.id_of(a.name) < 0) merged.declare(a.name, a.arity);
  }
  KripkeModel out;
  out.init(left.n_worlds + right.n_worlds, merged);
  int off = left.n_worlds;
  for (int a = 0; a < left.agents.size(); ++a) {
    int id = merged.id_of(left.agents.agent(a).name);
    for (int w = 0; w < left.n_worlds; ++w)
      out.succ[id][w] = left.succ[a][w];
  }
  for (int a = 0; a < right.agents.size(); ++a) {
    int id = merged.id_of(right.agents.agent(a).name);
    for (int w = 0; w < right.n_worlds; ++w)
      for (const auto& tuple : right.succ[a][w]) {
        std::vector<int> shifted;
        shifted.reserve(tuple.size());
        for (int v : tuple) shifted.push_back(v + off);
        out.succ[id][w + off].push_back(std::move(shifted));
      }
  }
  std::set<std::string> props;
  for (const auto& [p, s] : left.valuation) props.insert(p);
  for (const auto& [p, s] : right.valuation) props.insert(p);
  for (const auto& p : props) {
    WorldSet s = 0;
    if (auto it = left.valuation.find(p); it != left.valuation.end())
      s |= it->second;
    if (auto it = right.valuation.find(p); it != right.valuation.end())
      s |= it->second << off;
    out.valuation[p] = s;
  }
  if (!left.world_names.empty() || !right.world_names.empty()) {
    for (int w = 0; w < left.n_worlds; ++w)
      out.world_names.push_back(left.world_name(w));
    for (int w = 0; w < right.n_worlds; ++w)
      out.world_names.push_back(right.world_name(w));
  }
  return out;
}

}  // namespace bundlekit
