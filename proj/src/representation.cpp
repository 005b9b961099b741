#include "bundlekit/representation.hpp"

#include <algorithm>
#include <set>

#include "bundlekit/catalog.hpp"

namespace bundlekit {

ReprResult is_representation(const ConvexNbhModel& n, const KripkeModel& m,
                             const TermPtr& tau, const Caps& caps) {
  if (n.n_worlds > m.n_worlds)
    throw PreconditionError("neighborhood worlds do not embed into the model");
  WorldSet nfull = ws_full(n.n_worlds);
  std::set<std::string> props;
  for (const auto& [p, s] : n.valuation) props.insert(p);
  for (const auto& [p, s] : m.valuation) props.insert(p);
  for (const auto& p : props) {
    WorldSet a = 0, b = 0;
    if (auto it = n.valuation.find(p); it != n.valuation.end()) a = it->second;
    if (auto it = m.valuation.find(p); it != m.valuation.end()) b = it->second;
    if (a != (b & nfull))
      throw PreconditionError("valuations disagree on proposition " + p);
  }
  for (int w = 0; w < n.n_worlds; ++w) {
    NbhSet pairs = nbh(m, w, tau, caps);
    for (const auto& p : pairs) {
      if ((p.pos & p.neg) != 0) continue;
      bool dominated = false;
      for (WorldSet x : n.nplus[w]) {
        if (!ws_subset(x, p.pos)) continue;
        for (WorldSet y : n.nminus[w])
          if (ws_subset(y, p.neg)) { dominated = true; break; }
        if (dominated) break;
      }
      if (!dominated)
        return {false, w,
                "generated pair (" + n.set_name(p.pos & nfull) + "...," +
                    n.set_name(p.neg & nfull) +
                    "...) has no family pair below it at " + n.world_name(w)};
    }
    for (WorldSet x : n.nplus[w])
      for (WorldSet y : n.nminus[w]) {
        if ((x & y) != 0) continue;
        bool dominated = false;
        for (const auto& p : pairs)
          if (ws_subset(p.pos, x) && ws_subset(p.neg, y)) {
            dominated = true;
            break;
          }
        if (!dominated)
          return {false, w,
                  "family pair (" + n.set_name(x) + "," + n.set_name(y) +
                      ") has no generated pair below it at " + n.world_name(w)};
      }
  }
  return {};
}

namespace {

void require_property(const ConvexNbhModel& n, FrameProperty p) {
  PropertyResult r = property_check(n, p);
  if (!r.ok) throw PreconditionError("precondition " + p.name() + ": " + r.detail);
}

void require_derived(const ConvexNbhModel& n, DerivedCheck c, int colors,
                     const std::string& what) {
  DerivedResult r = derived_property(n, c, colors);
  if (!r.ok) throw PreconditionError("precondition " + what + ": " + r.detail);
}

}  // namespace

GroupModel represent_group_knowledge(const ConvexNbhModel& n,
                                     const std::vector<std::string>& agent_names,
                                     GroupMode mode) {
  int k = static_cast<int>(agent_names.size());
  if (k < 1) throw PreconditionError("need at least one agent");
  if (mode == GroupMode::S5) {
    require_property(n, FrameProperty::parse("Pur+"));
    require_property(n, FrameProperty::parse("Refl+"));
  } else {
    require_property(n, FrameProperty::parse("Sym"));
    require_property(n, FrameProperty::parse("Ser+"));
  }
  require_property(n, FrameProperty::parse("DBd+", k));
  require_derived(n, DerivedCheck::IntrospectivePlus, 0, "introspective+");
  require_derived(n, DerivedCheck::SerialPlus, k, std::to_string(k) + "-serial+");
  DerivedResult coloring = derived_property(n, DerivedCheck::ColorablePlus, k);
  if (!coloring.ok)
    throw PreconditionError("precondition " + std::to_string(k) +
                            "-colorable+: " + coloring.detail);

  AgentTable table;
  std::vector<int> ids;
  for (const auto& name : agent_names) ids.push_back(table.declare(name, 1));
  GroupModel out;
  out.model.init(n.n_worlds, table);
  out.model.valuation = n.valuation;
  out.model.world_names = n.world_names;
  out.coloring.by_set = coloring.coloring;
  for (int w = 0; w < n.n_worlds; ++w) {
    // exactly one member of each color: |family| = k and the coloring is
    // injective on it
    if (static_cast<int>(n.nplus[w].size()) != k)
      throw PreconditionError("family at " + n.world_name(w) +
                              " does not have exactly " + std::to_string(k) +
                              " members");
    for (WorldSet x : n.nplus[w])
      out.model.set_unary(coloring.coloring.at(x), w, x);
  }
  out.tau = mode == GroupMode::S5 ? someone_knows_term(ids)
                                  : group_disagreement_term(ids);
  return out;
}

BeliefModel represent_belief_without_knowledge(const ConvexNbhModel& n, int w0,
                                               bool want_s4f) {
  CoreResult core = is_core(n);
  if (!core.ok) throw PreconditionError("precondition core: " + core.detail);
  if (!is_generated_from(n, w0))
    throw PreconditionError("precondition: model not generated from " +
                            n.world_name(w0));
  require_property(n, FrameProperty::parse("Ser+"));
  require_property(n, FrameProperty::parse("DBd+", 1));
  require_property(n, FrameProperty::parse("Emp+"));
  require_property(n, FrameProperty::parse("Ser-"));
  require_property(n, FrameProperty::parse("SBd-", 1));
  require_property(n, FrameProperty::parse("PIpp-"));
  require_property(n, FrameProperty::parse("NIppp-"));
  require_property(n, FrameProperty::parse("Id-"));
  if (want_s4f) require_property(n, FrameProperty::parse("PIppp-"));

  AgentTable table;
  int a = table.declare("a", 1);
  BeliefModel out;
  out.model.init(n.n_worlds, table);
  out.model.valuation = n.valuation;
  out.model.world_names = n.world_names;
  out.tau = belief_without_knowledge_term(a);

  if (n.nplus[w0].empty()) {
    // Core then forces the negative family empty too, and generatedness
    // collapses the model to the single world: one reflexive point.
    if (n.n_worlds != 1)
      throw PreconditionError("empty family at the root but several worlds");
    out.model.set_unary(a, w0, world_bit(w0));
    out.x0 = 0;
    return out;
  }

  out.x0 = n.nplus[w0][0];
  for (int w = 0; w < n.n_worlds; ++w) {
    WorldSet r = 0;
    for (WorldSet y : n.nminus[w])
      if (ws_size(y) == 1) r |= y;
    for (int v : ws_elements(r)) out.base.add(w, v);
    out.model.set_unary(a, w, r | out.x0);
  }
  return out;
}

namespace {

WorldSet least_member_or_self(const std::vector<WorldSet>& fam, int v) {
  if (fam.empty()) return world_bit(v);
  return *std::min_element(fam.begin(), fam.end());
}

}  // namespace

UnravelResult unravel(const ConvexNbhModel& src, int w, int depth,
                      UnravelMode mode, int colors) {
  if (depth < 1) throw PreconditionError("unravel depth must be >= 1");
  int n = colors;
  if (n <= 0) {
    n = 1;
    for (int v = 0; v < src.n_worlds; ++v)
      n = std::max(n, static_cast<int>(src.nplus[v].size()));
  }
  CoreResult core = is_core(src);
  if (!core.ok) throw PreconditionError("precondition core: " + core.detail);
  require_property(src, FrameProperty::parse("DBd+", n));
  require_property(src, FrameProperty::parse("PIp+"));
  require_property(src, FrameProperty::parse("Coa+", n - 1));
  if (mode == UnravelMode::Sym) {
    require_property(src, FrameProperty::parse("Sym"));
    require_property(src, FrameProperty::parse("Ser+"));
  } else {
    require_property(src, FrameProperty::parse("Pur+"));
    require_property(src, FrameProperty::parse("Refl+"));
  }

  UnravelResult out;
  out.n = n;
  out.nodes.push_back(UnravelNode{-1, 0, 0, w, 0});
  std::vector<std::vector<WorldSet>> families(1);
  std::vector<WorldSet> own_cluster(1, 0);

  // In refl mode the creating node stands in for its source world, so every
  // cluster contains its creator and introspection survives the copying.
  auto make_cluster = [&](int creator, int j, WorldSet member_set,
                          int node_depth) {
    WorldSet cluster = 0;
    WorldSet copy_worlds = member_set;
    if (mode == UnravelMode::Refl) {
      int sw = out.nodes[creator].source_world;
      if (!ws_contains(member_set, sw))
        throw PreconditionError("reflexive copy without the source world");
      copy_worlds &= ~world_bit(sw);
      cluster |= world_bit(creator);
    }
    std::vector<int> created;
    for (int u : ws_elements(copy_worlds)) {
      if (out.nodes.size() >= kMaxWorlds)
        throw CapExceeded("unraveling exceeds the world limit");
      int idx = static_cast<int>(out.nodes.size());
      out.nodes.push_back(UnravelNode{creator, j, member_set, u, node_depth});
      families.emplace_back();
      own_cluster.push_back(0);
      created.push_back(idx);
      cluster |= world_bit(idx);
    }
    for (int idx : created) own_cluster[idx] = cluster;
    return cluster;
  };

  std::vector<int> level{0};
  for (int d = 0; d < depth && !level.empty(); ++d) {
    std::vector<int> next;
    for (int node : level) {
      int v = out.nodes[node].source_world;
      std::vector<WorldSet> fam;
      WorldSet skip = 0;
      bool has_skip = false;
      if (node != 0) {
        fam.push_back(own_cluster[node]);
        skip = out.nodes[node].source_set;
        has_skip = true;
      }
      for (WorldSet x : src.nplus[v]) {
        if (has_skip && x == skip) continue;
        fam.push_back(make_cluster(node, 0, x, d + 1));
      }
      if (static_cast<int>(fam.size()) > n)
        throw PreconditionError("family exceeds the bound at a copy of " +
                                src.world_name(v));
      WorldSet zv = least_member_or_self(src.nplus[v], v);
      int pad = n - static_cast<int>(fam.size());
      for (int i = 1; i <= pad; ++i)
        fam.push_back(make_cluster(node, i, zv, d + 1));
      families[node] = std::move(fam);
    }
    for (std::size_t i = 0; i < out.nodes.size(); ++i)
      if (out.nodes[i].depth == d + 1) next.push_back(static_cast<int>(i));
    level = std::move(next);
  }
  // Nodes at the cut keep only the cluster they were created in.
  for (int node : level) {
    families[node] = {own_cluster[node]};
    out.frontier |= world_bit(node);
  }

  out.model.init(static_cast<int>(out.nodes.size()));
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    out.model.nplus[i] = families[i];
    out.model.nminus[i] =
        mode == UnravelMode::Sym ? families[i] : std::vector<WorldSet>{0};
  }
  for (const auto& [p, s] : src.valuation) {
    WorldSet ext = 0;
    for (std::size_t i = 0; i < out.nodes.size(); ++i)
      if (ws_contains(s, out.nodes[i].source_world))
        ext |= world_bit(static_cast<int>(i));
    out.model.valuation[p] = ext;
  }
  out.model.normalize();
  return out;
}

}  // namespace bundlekit
