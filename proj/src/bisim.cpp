#include "bundlekit/bisim.hpp"

#include <algorithm>
#include <unordered_set>

namespace bundlekit {

bool Relation::contains(int w, int v) const {
  return std::find(pairs.begin(), pairs.end(), std::make_pair(w, v)) !=
         pairs.end();
}

void Relation::add(int w, int v) {
  if (!contains(w, v)) pairs.emplace_back(w, v);
}

std::vector<WorldSet> Relation::forward_images(int n_worlds) const {
  std::vector<WorldSet> img(n_worlds, 0);
  for (auto [w, v] : pairs) img[w] |= world_bit(v);
  return img;
}

std::vector<WorldSet> Relation::backward_images(int n_worlds) const {
  std::vector<WorldSet> img(n_worlds, 0);
  for (auto [w, v] : pairs) img[v] |= world_bit(w);
  return img;
}

Relation Relation::full(int n_worlds) {
  Relation r;
  for (int w = 0; w < n_worlds; ++w)
    for (int v = 0; v < n_worlds; ++v) r.pairs.emplace_back(w, v);
  return r;
}

Relation Relation::identity(int n_worlds) {
  Relation r;
  for (int w = 0; w < n_worlds; ++w) r.pairs.emplace_back(w, w);
  return r;
}

namespace {

// Everything the coherence checks need, computed once per model/term.
struct BisimContext {
  const KripkeModel& m;
  std::vector<WorldSet> doms;
  std::vector<NbhSet> nbhs;
  std::vector<std::unordered_set<WorldSet>> coms;
  std::vector<WorldSet> prop_sig;  // per world, bitmask over propositions

  BisimContext(const KripkeModel& model, const TermPtr& tau, const Caps& caps)
      : m(model) {
    doms.reserve(m.n_worlds);
    nbhs.reserve(m.n_worlds);
    coms.resize(m.n_worlds);
    for (int w = 0; w < m.n_worlds; ++w) {
      doms.push_back(dom(m, w, tau));
      nbhs.push_back(nbh(m, w, tau, caps));
      if (ws_size(doms[w]) > caps.max_completion_dom)
        throw CapExceeded("domain too large for coherence enumeration");
      for (WorldSet z : completion(m, w, tau, caps)) coms[w].insert(z);
    }
    prop_sig.assign(m.n_worlds, 0);
    int bitn = 0;
    for (const auto& [p, s] : m.valuation) {
      for (int w : ws_elements(s)) prop_sig[w] |= WorldSet{1} << bitn;
      ++bitn;
      if (bitn >= 64) throw CapExceeded("too many propositions");
    }
  }

  bool in_com(int w, WorldSet z) const { return coms[w].count(z) > 0; }

  bool coherent(const std::vector<WorldSet>& img, int w, int v, WorldSet x,
                WorldSet y) const {
    WorldSet image = 0;
    for (int u : ws_elements(x | y)) image |= img[u];
    return ws_subset(image & doms[w], x) && ws_subset(image & doms[v], y);
  }

  // tau-Coh fails only on a coherent pair whose completion memberships
  // disagree; scanning from the side that is in the completion covers both
  // mismatch directions.
  std::optional<Violation> coh_violation(const std::vector<WorldSet>& img,
                                         int w, int v) const {
    std::optional<Violation> found;
    ws_for_each_subset(doms[w], [&](WorldSet x) {
      if (!in_com(w, x)) return true;
      return ws_for_each_subset(doms[v], [&](WorldSet y) {
        if (in_com(v, y) || !coherent(img, w, v, x, y)) return true;
        found = Violation{ViolationKind::Coh, w, v, x, y,
                          "coherent pair with mismatched completions"};
        return false;
      });
    });
    if (found) return found;
    ws_for_each_subset(doms[v], [&](WorldSet y) {
      if (!in_com(v, y)) return true;
      return ws_for_each_subset(doms[w], [&](WorldSet x) {
        if (in_com(w, x) || !coherent(img, w, v, x, y)) return true;
        found = Violation{ViolationKind::Coh, w, v, x, y,
                          "coherent pair with mismatched completions"};
        return false;
      });
    });
    return found;
  }

  std::optional<Violation> zigzag_violation(const std::vector<WorldSet>& fwd,
                                            const std::vector<WorldSet>& bwd,
                                            int w, int v) const {
    auto image = [](const std::vector<WorldSet>& img, WorldSet s) {
      WorldSet out = 0;
      for (int u : ws_elements(s)) out |= img[u];
      return out;
    };
    for (const auto& p : nbhs[w]) {
      WorldSet zx0 = image(fwd, p.pos);
      if ((zx0 & p.neg) != 0) continue;
      WorldSet zx1 = image(fwd, p.neg);
      bool matched = false;
      for (const auto& q : nbhs[v])
        if (ws_subset(q.pos, zx0) && ws_subset(q.neg, zx1)) {
          matched = true;
          break;
        }
      if (!matched)
        return Violation{ViolationKind::Zig, w, v, p.pos, p.neg,
                         "no matching pair on the right"};
    }
    for (const auto& q : nbhs[v]) {
      WorldSet zy0 = image(fwd, q.pos);
      if ((zy0 & q.neg) != 0) continue;
      WorldSet iy0 = image(bwd, q.pos);
      WorldSet iy1 = image(bwd, q.neg);
      bool matched = false;
      for (const auto& p : nbhs[w])
        if (ws_subset(p.pos, iy0) && ws_subset(p.neg, iy1)) {
          matched = true;
          break;
        }
      if (!matched)
        return Violation{ViolationKind::Zag, w, v, q.pos, q.neg,
                         "no matching pair on the left"};
    }
    return std::nullopt;
  }
};

std::optional<Violation> inv_violation(const BisimContext& ctx, int w, int v) {
  if (ctx.prop_sig[w] != ctx.prop_sig[v])
    return Violation{ViolationKind::Inv, w, v, 0, 0,
                     "valuations differ at " + ctx.m.world_name(w) + " / " +
                         ctx.m.world_name(v)};
  return std::nullopt;
}

Relation greatest_fixpoint(const BisimContext& ctx, int n_worlds, bool convex) {
  // Downward iteration from the full relation; both transfer conditions are
  // monotone in Z, so the sequence stabilizes on the greatest fixpoint.
  std::vector<WorldSet> fwd(n_worlds), bwd(n_worlds);
  std::vector<std::vector<bool>> in(n_worlds, std::vector<bool>(n_worlds, true));
  for (int w = 0; w < n_worlds; ++w)
    for (int v = 0; v < n_worlds; ++v)
      if (inv_violation(ctx, w, v)) in[w][v] = false;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int w = 0; w < n_worlds; ++w) {
      fwd[w] = 0;
      bwd[w] = 0;
    }
    for (int w = 0; w < n_worlds; ++w)
      for (int v = 0; v < n_worlds; ++v)
        if (in[w][v]) {
          fwd[w] |= world_bit(v);
          bwd[v] |= world_bit(w);
        }
    for (int w = 0; w < n_worlds; ++w)
      for (int v = 0; v < n_worlds; ++v) {
        if (!in[w][v]) continue;
        std::optional<Violation> bad =
            convex ? ctx.zigzag_violation(fwd, bwd, w, v)
                   : ctx.coh_violation(fwd, w, v);
        if (bad) {
          in[w][v] = false;
          changed = true;
        }
      }
  }
  Relation out;
  for (int w = 0; w < n_worlds; ++w)
    for (int v = 0; v < n_worlds; ++v)
      if (in[w][v]) out.pairs.emplace_back(w, v);
  return out;
}

}  // namespace

bool z_coherent(const KripkeModel& m, const TermPtr& tau, const Relation& z,
                int w, int v, WorldSet x, WorldSet y) {
  WorldSet dw = dom(m, w, tau), dv = dom(m, v, tau);
  if (!ws_subset(x, dw) || !ws_subset(y, dv))
    throw ModelError("coherence arguments must lie inside the domains");
  auto img = z.forward_images(m.n_worlds);
  WorldSet image = 0;
  for (int u : ws_elements(x | y)) image |= img[u];
  return ws_subset(image & dw, x) && ws_subset(image & dv, y);
}

BisimResult is_bisimulation(const KripkeModel& m, const Relation& z,
                            const TermPtr& tau, const Caps& caps) {
  BisimContext ctx(m, tau, caps);
  auto fwd = z.forward_images(m.n_worlds);
  for (auto [w, v] : z.pairs) {
    if (auto bad = inv_violation(ctx, w, v)) return {false, bad};
    if (auto bad = ctx.coh_violation(fwd, w, v)) return {false, bad};
  }
  return {};
}

Relation largest_bisimulation(const KripkeModel& m, const TermPtr& tau,
                              const Caps& caps) {
  BisimContext ctx(m, tau, caps);
  return greatest_fixpoint(ctx, m.n_worlds, false);
}

bool bisimilar(const KripkeModel& m, int w, const KripkeModel& n, int v,
               const TermPtr& tau, const Caps& caps) {
  KripkeModel u = disjoint_union(m, n);
  return largest_bisimulation(u, tau, caps).contains(w, m.n_worlds + v);
}

BisimResult is_convex_bisimulation(const KripkeModel& m, const Relation& z,
                                   const TermPtr& tau, const Caps& caps) {
  BisimContext ctx(m, tau, caps);
  auto fwd = z.forward_images(m.n_worlds);
  auto bwd = z.backward_images(m.n_worlds);
  for (auto [w, v] : z.pairs) {
    if (auto bad = inv_violation(ctx, w, v)) return {false, bad};
    if (auto bad = ctx.zigzag_violation(fwd, bwd, w, v)) return {false, bad};
  }
  return {};
}

Relation largest_convex_bisimulation(const KripkeModel& m, const TermPtr& tau,
                                     const Caps& caps) {
  BisimContext ctx(m, tau, caps);
  return greatest_fixpoint(ctx, m.n_worlds, true);
}

bool convex_bisimilar(const KripkeModel& m, int w, const KripkeModel& n, int v,
                      const TermPtr& tau, const Caps& caps) {
  KripkeModel u = disjoint_union(m, n);
  return largest_convex_bisimulation(u, tau, caps).contains(w, m.n_worlds + v);
}

std::vector<WorldSet> definable_extensions(const KripkeModel& m,
                                           const TermPtr& tau,
                                           const Caps& caps) {
  if (m.n_worlds > 12)
    throw CapExceeded("model too large for extension closure");
  std::vector<WorldSet> doms;
  std::vector<std::unordered_set<WorldSet>> coms;
  for (int w = 0; w < m.n_worlds; ++w) {
    doms.push_back(dom(m, w, tau));
    coms.emplace_back();
    for (WorldSet z : completion(m, w, tau, caps)) coms.back().insert(z);
  }
  WorldSet full = ws_full(m.n_worlds);
  auto circle_map = [&](WorldSet u) {
    WorldSet out = 0;
    for (int w = 0; w < m.n_worlds; ++w)
      if (coms[w].count(u & doms[w])) out |= world_bit(w);
    return out;
  };
  std::unordered_set<WorldSet> family{full};
  for (const auto& [p, s] : m.valuation) family.insert(s);
  std::vector<WorldSet> work(family.begin(), family.end());
  auto push = [&](WorldSet s) {
    if (family.insert(s).second) {
      work.push_back(s);
      if (family.size() > caps.max_definable_sets)
        throw CapExceeded("extension closure exceeds cap");
    }
  };
  while (!work.empty()) {
    WorldSet u = work.back();
    work.pop_back();
    push(full & ~u);
    push(circle_map(u));
    for (WorldSet v : std::vector<WorldSet>(family.begin(), family.end()))
      push(u & v);
  }
  std::vector<WorldSet> out(family.begin(), family.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> equiv_partition(const KripkeModel& m, const TermPtr& tau,
                                 const Caps& caps) {
  std::vector<WorldSet> family = definable_extensions(m, tau, caps);
  std::vector<int> block(m.n_worlds, -1);
  int next = 0;
  for (int w = 0; w < m.n_worlds; ++w) {
    if (block[w] >= 0) continue;
    block[w] = next;
    for (int v = w + 1; v < m.n_worlds; ++v) {
      if (block[v] >= 0) continue;
      bool same = true;
      for (WorldSet u : family)
        if (ws_contains(u, w) != ws_contains(u, v)) {
          same = false;
          break;
        }
      if (same) block[v] = next;
    }
    ++next;
  }
  return block;
}

}  // namespace bundlekit
