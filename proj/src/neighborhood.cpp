#include "bundlekit/neighborhood.hpp"

#include <algorithm>
#include <functional>

namespace bundlekit {

void ConvexNbhModel::init(int worlds) {
  if (worlds < 1 || worlds > kMaxWorlds)
    throw ModelError("world count out of range: " + std::to_string(worlds));
  n_worlds = worlds;
  nplus.assign(worlds, {});
  nminus.assign(worlds, {});
}

void ConvexNbhModel::normalize() {
  for (auto* fam : {&nplus, &nminus})
    for (auto& sets : *fam) {
      std::sort(sets.begin(), sets.end());
      sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    }
}

std::string ConvexNbhModel::world_name(int w) const {
  if (w >= 0 && w < static_cast<int>(world_names.size())) return world_names[w];
  return std::to_string(w);
}

int ConvexNbhModel::world_index(std::string_view name) const {
  for (std::size_t i = 0; i < world_names.size(); ++i)
    if (world_names[i] == name) return static_cast<int>(i);
  return -1;
}

std::string ConvexNbhModel::set_name(WorldSet s) const {
  std::string out = "{";
  bool first = true;
  for (int w : ws_elements(s)) {
    if (!first) out += ",";
    out += world_name(w);
    first = false;
  }
  return out + "}";
}

WorldSet nbh_extension(const ConvexNbhModel& n, const FormulaPtr& f,
                       std::span<const WorldSet> metavals) {
  WorldSet full = ws_full(n.n_worlds);
  switch (f->kind) {
    case FormulaKind::Prop: {
      if (f->meta >= 0) {
        if (f->meta >= static_cast<int>(metavals.size()))
          throw ModelError("unbound metavariable " + f->prop);
        return metavals[f->meta];
      }
      auto it = n.valuation.find(f->prop);
      if (it == n.valuation.end())
        throw ModelError("unknown proposition: " + f->prop);
      return it->second;
    }
    case FormulaKind::Top:
      return full;
    case FormulaKind::Neg:
      return full & ~nbh_extension(n, f->args[0], metavals);
    case FormulaKind::Conj:
      return nbh_extension(n, f->args[0], metavals) &
             nbh_extension(n, f->args[1], metavals);
    case FormulaKind::Circle: {
      WorldSet inner = nbh_extension(n, f->args[0], metavals);
      WorldSet out = 0;
      for (int w = 0; w < n.n_worlds; ++w) {
        bool pos = false, negw = false;
        for (WorldSet x : n.nplus[w])
          if (ws_subset(x, inner)) { pos = true; break; }
        if (!pos) continue;
        for (WorldSet y : n.nminus[w])
          if ((y & inner) == 0) { negw = true; break; }
        if (negw) out |= world_bit(w);
      }
      return out;
    }
  }
  return 0;
}

bool nsat(const ConvexNbhModel& n, int w, const FormulaPtr& f) {
  return ws_contains(nbh_extension(n, f), w);
}

CoreResult is_core(const ConvexNbhModel& n) {
  for (int w = 0; w < n.n_worlds; ++w) {
    for (WorldSet x : n.nplus[w]) {
      bool ok = false;
      for (WorldSet y : n.nminus[w])
        if ((x & y) == 0) { ok = true; break; }
      if (!ok)
        return {false, "no disjoint negative partner for " + n.set_name(x) +
                           " at " + n.world_name(w)};
    }
    for (WorldSet y : n.nminus[w]) {
      bool ok = false;
      for (WorldSet x : n.nplus[w])
        if ((x & y) == 0) { ok = true; break; }
      if (!ok)
        return {false, "no disjoint positive partner for " + n.set_name(y) +
                           " at " + n.world_name(w)};
    }
    for (auto* fam : {&n.nplus[w], &n.nminus[w]})
      for (WorldSet a : *fam)
        for (WorldSet b : *fam)
          if (a != b && ws_subset(a, b))
            return {false, "family not an antichain at " + n.world_name(w) +
                               ": " + n.set_name(a) + " inside " + n.set_name(b)};
  }
  return {};
}

FrameProperty FrameProperty::parse(std::string_view name, int n) {
  std::string s(name);
  bool minus = false;
  if (!s.empty() && (s.back() == '+' || s.back() == '-')) {
    minus = s.back() == '-';
    s.pop_back();
  }
  FrameProperty p;
  p.minus = minus;
  p.n = n;
  if (s == "Sym") p.kind = PropertyKind::Sym;
  else if (s == "Pur") p.kind = PropertyKind::Pur;
  else if (s == "Ser") p.kind = PropertyKind::Ser;
  else if (s == "Refl") p.kind = PropertyKind::Refl;
  else if (s == "nDBd" || s == "DBd") p.kind = PropertyKind::DBd;
  else if (s == "PIprime" || s == "PIp") p.kind = PropertyKind::PIprime;
  else if (s == "nCoa" || s == "Coa") p.kind = PropertyKind::Coa;
  else if (s == "nSBd" || s == "SBd") p.kind = PropertyKind::SBd;
  else if (s == "PIdoubleprime" || s == "PIpp") p.kind = PropertyKind::PIdoubleprime;
  else if (s == "PItripleprime" || s == "PIppp") p.kind = PropertyKind::PItripleprime;
  else if (s == "NItripleprime" || s == "NIppp") p.kind = PropertyKind::NItripleprime;
  else if (s == "Emp") p.kind = PropertyKind::Emp;
  else if (s == "Id") p.kind = PropertyKind::Id;
  else throw ModelError("unknown frame property: " + std::string(name));
  return p;
}

std::string FrameProperty::name() const {
  std::string base;
  switch (kind) {
    case PropertyKind::Sym: return "Sym";
    case PropertyKind::Pur: base = "Pur"; break;
    case PropertyKind::Ser: base = "Ser"; break;
    case PropertyKind::Refl: base = "Refl"; break;
    case PropertyKind::DBd: base = std::to_string(n) + "DBd"; break;
    case PropertyKind::PIprime: base = "PIprime"; break;
    case PropertyKind::Coa: base = std::to_string(n) + "Coa"; break;
    case PropertyKind::SBd: base = std::to_string(n) + "SBd"; break;
    case PropertyKind::PIdoubleprime: base = "PIdoubleprime"; break;
    case PropertyKind::PItripleprime: base = "PItripleprime"; break;
    case PropertyKind::NItripleprime: base = "NItripleprime"; break;
    case PropertyKind::Emp: base = "Emp"; break;
    case PropertyKind::Id: base = "Id"; break;
  }
  return base + (minus ? "-" : "+");
}

namespace {

// Membership in the up-closure without materializing it.
bool in_upclosure(const std::vector<WorldSet>& fam, WorldSet z) {
  for (WorldSet x : fam)
    if (ws_subset(x, z)) return true;
  return false;
}

}  // namespace

PropertyResult property_check(const ConvexNbhModel& n, FrameProperty p) {
  // The minus dual swaps the roles of the two families.
  const auto& A = p.minus ? n.nminus : n.nplus;
  const auto& B = p.minus ? n.nplus : n.nminus;
  auto bad = [&](int w, std::string what) {
    return PropertyResult{false, w, p.name() + " fails at " + n.world_name(w) +
                                     (what.empty() ? "" : ": " + what)};
  };
  for (int w = 0; w < n.n_worlds; ++w) {
    switch (p.kind) {
      case PropertyKind::Sym:
        if (n.nplus[w] != n.nminus[w]) return bad(w, "families differ");
        break;
      case PropertyKind::Pur:
        if (A[w].empty()) return bad(w, "primary family empty");
        if (std::find(B[w].begin(), B[w].end(), WorldSet{0}) == B[w].end())
          return bad(w, "empty set missing from the dual family");
        break;
      case PropertyKind::Ser:
        for (WorldSet x : A[w])
          if (x == 0) return bad(w, "empty member");
        break;
      case PropertyKind::Refl:
        for (WorldSet x : A[w])
          if (!ws_contains(x, w)) return bad(w, n.set_name(x) + " misses the world");
        break;
      case PropertyKind::DBd:
        if (static_cast<int>(A[w].size()) > p.n)
          return bad(w, "family larger than " + std::to_string(p.n));
        break;
      case PropertyKind::SBd:
        for (WorldSet x : A[w])
          if (ws_size(x) > p.n)
            return bad(w, n.set_name(x) + " larger than " + std::to_string(p.n));
        break;
      case PropertyKind::PIprime:
        for (WorldSet x : A[w])
          for (int v : ws_elements(x)) {
            bool has_disjoint = false;
            for (WorldSet y : B[v])
              if ((x & y) == 0) { has_disjoint = true; break; }
            if (has_disjoint && !in_upclosure(A[v], x))
              return bad(w, n.set_name(x) + " not inherited at " + n.world_name(v));
          }
        break;
      case PropertyKind::Coa:
        for (WorldSet x : A[w])
          for (int v : ws_elements(x)) {
            int outside = 0;
            for (WorldSet z : A[v])
              if (!ws_subset(x, z)) ++outside;
            if (outside > p.n)
              return bad(w, std::to_string(outside) + " members at " +
                                n.world_name(v) + " outside the cone of " +
                                n.set_name(x));
          }
        break;
      case PropertyKind::PIdoubleprime:
        for (WorldSet x : A[w])
          for (int v : ws_elements(x)) {
            if (!in_upclosure(A[v], x))
              return bad(w, n.set_name(x) + " not inherited at " + n.world_name(v));
            for (WorldSet y : B[w])
              if ((x & y) == 0 && !in_upclosure(B[v], y))
                return bad(w, n.set_name(y) + " not inherited at " + n.world_name(v));
          }
        break;
      case PropertyKind::PItripleprime:
        for (WorldSet x : A[w])
          for (int v : ws_elements(x)) {
            for (WorldSet z : A[w])
              if (!in_upclosure(A[v], z))
                return bad(w, n.set_name(z) + " not inherited at " + n.world_name(v));
            for (WorldSet z : B[w])
              if (!in_upclosure(B[v], z))
                return bad(w, n.set_name(z) + " not inherited at " + n.world_name(v));
          }
        break;
      case PropertyKind::NItripleprime:
        for (WorldSet x : A[w])
          for (int v : ws_elements(x)) {
            for (WorldSet z : A[v])
              if (!in_upclosure(A[w], z))
                return bad(w, n.set_name(z) + " at " + n.world_name(v) +
                                  " not below the family at " + n.world_name(w));
            for (WorldSet z : B[v])
              if (!in_upclosure(B[w], z))
                return bad(w, n.set_name(z) + " at " + n.world_name(v) +
                                  " not below the family at " + n.world_name(w));
          }
        break;
      case PropertyKind::Emp:
        for (WorldSet x : A[w])
          for (int v : ws_elements(x))
            if (!n.nplus[v].empty() || !n.nminus[v].empty())
              return bad(w, "families at " + n.world_name(v) + " not empty");
        break;
      case PropertyKind::Id: {
        bool premise = false;
        for (WorldSet y : B[w])
          if (!ws_contains(y, w)) { premise = true; break; }
        if (premise && !in_upclosure(A[w], world_bit(w)))
          return bad(w, "no member inside the singleton");
        break;
      }
    }
  }
  return {};
}

namespace {

FormulaPtr big_conj(const std::vector<FormulaPtr>& fs) {
  FormulaPtr out = fs.empty() ? top() : fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) out = conj(out, fs[i]);
  return out;
}

FormulaPtr big_disj(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return bottom();
  FormulaPtr out = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) out = disj(out, fs[i]);
  return out;
}

}  // namespace

Schema make_schema(std::string_view id_in, int n) {
  std::string id(id_in);
  if (id == "CONV") {
    // O(p0 & p1) & O(p0 | p2) -> O p0
    return {id, 3,
            implies(conj(circle(conj(meta_prop(0), meta_prop(1))),
                         circle(disj(meta_prop(0), meta_prop(2)))),
                    circle(meta_prop(0)))};
  }
  if (id == "EQU")
    return {id, 1, implies(circle(meta_prop(0)), filled_circle(meta_prop(0)))};

  if (id.empty() || (id.back() != '+' && id.back() != '-'))
    throw ModelError("schema id needs a +/- suffix: " + id);
  bool minus = id.back() == '-';
  std::string base = id.substr(0, id.size() - 1);
  auto mod = [minus](FormulaPtr f) {
    return minus ? filled_circle(std::move(f)) : circle(std::move(f));
  };

  if (base == "N") return {id, 0, mod(top())};
  if (base == "D") return {id, 0, neg(mod(bottom()))};
  if (base == "T") return {id, 1, implies(mod(meta_prop(0)), meta_prop(0))};
  if (base == "Cn" || base == "C") {
    if (n < 1) throw ModelError("schema " + id + " needs n >= 1");
    std::vector<FormulaPtr> ante, cons;
    for (int i = 0; i <= n; ++i) ante.push_back(mod(meta_prop(i)));
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        cons.push_back(mod(conj(meta_prop(i), meta_prop(j))));
    return {id, n + 1, implies(big_conj(ante), big_disj(cons))};
  }
  if (base == "4p") {
    FormulaPtr p0 = meta_prop(0), p1 = meta_prop(1);
    return {id, 2,
            implies(mod(p0),
                    mod(conj(p0, implies(mod(disj(p0, p1)), mod(p0)))))};
  }
  if (base == "5Cn" || base == "5C") {
    if (n < 1) throw ModelError("schema " + id + " needs n >= 1");
    // metavariables: p0 plus q1..q_{n+1} in slots 1..n+1
    FormulaPtr p0 = meta_prop(0);
    std::vector<FormulaPtr> nondense, qs, pairs;
    for (int i = 1; i <= n + 1; ++i) {
      nondense.push_back(neg(mod(conj(p0, meta_prop(i)))));
      qs.push_back(mod(meta_prop(i)));
    }
    for (int i = 1; i <= n + 1; ++i)
      for (int j = i + 1; j <= n + 1; ++j)
        pairs.push_back(mod(conj(meta_prop(i), meta_prop(j))));
    FormulaPtr inner = implies(big_conj(qs), big_disj(pairs));
    return {id, n + 2,
            implies(conj(mod(p0), big_conj(nondense)), mod(conj(p0, inner)))};
  }
  if (base == "DIVn" || base == "DIV") {
    if (n < 1) throw ModelError("schema " + id + " needs n >= 1");
    std::vector<FormulaPtr> all;
    for (int i = 0; i <= n; ++i) all.push_back(meta_prop(i));
    std::vector<FormulaPtr> cons;
    for (int i = 0; i <= n; ++i) {
      std::vector<FormulaPtr> rest;
      for (int j = 0; j <= n; ++j)
        if (j != i) rest.push_back(meta_prop(j));
      cons.push_back(mod(big_disj(rest)));
    }
    return {id, n + 1, implies(mod(big_disj(all)), big_disj(cons))};
  }
  if (base == "4pp") {
    FormulaPtr p0 = meta_prop(0), p1 = meta_prop(1);
    FormulaPtr cover = mod(disj(p0, p1));
    return {id, 2, implies(conj(mod(p0), cover), mod(conj(p0, cover)))};
  }
  if (base == "4ppp") {
    FormulaPtr p0 = meta_prop(0), p1 = meta_prop(1);
    return {id, 2, implies(conj(mod(p0), mod(p1)), mod(conj(p0, mod(p1))))};
  }
  if (base == "5ppp") {
    FormulaPtr p0 = meta_prop(0), p1 = meta_prop(1);
    return {id, 2,
            implies(conj(mod(p0), neg(mod(p1))), mod(conj(p0, neg(mod(p1)))))};
  }
  if (base == "DE") {
    FormulaPtr p0 = meta_prop(0), p1 = meta_prop(1);
    return {id, 2, implies(mod(p0), mod(conj(p0, neg(mod(p1)))))};
  }
  if (base == "R1") {
    FormulaPtr p0 = meta_prop(0), p1 = meta_prop(1);
    return {id, 2, implies(conj(p0, mod(disj(p0, p1))), mod(p0))};
  }
  throw ModelError("unknown schema id: " + id);
}

std::vector<std::string> schema_ids() {
  return {"CONV", "EQU",  "N+",    "N-",    "D+",    "D-",    "T+",
          "T-",   "Cn+",  "Cn-",   "4p+",   "4p-",   "5Cn+",  "5Cn-",
          "DIVn+", "DIVn-", "4pp+", "4pp-", "4ppp+", "4ppp-", "5ppp+",
          "5ppp-", "DE+",  "DE-",   "R1+",   "R1-"};
}

SchemaResult schema_valid_on_frame(const ConvexNbhModel& frame, const Schema& s,
                                   const Caps& caps) {
  if (frame.n_worlds > 6)
    throw CapExceeded("frame too large for exhaustive valuation search");
  (void)caps;
  WorldSet full = ws_full(frame.n_worlds);
  std::vector<WorldSet> assignment(s.metavars, 0);
  std::size_t total = 1;
  for (int i = 0; i < s.metavars; ++i) total *= (std::size_t{1} << frame.n_worlds);
  for (std::size_t idx = 0;; ++idx) {
    WorldSet ext = nbh_extension(frame, s.body, assignment);
    if (ext != full) {
      int w = std::countr_zero(full & ~ext);
      return {false, w, assignment};
    }
    if (idx + 1 >= total) break;
    // odometer over all metavariable valuations
    for (int i = 0; i < s.metavars; ++i) {
      if (assignment[i] != full) {
        ++assignment[i];
        break;
      }
      assignment[i] = 0;
    }
  }
  return {};
}

Submodel generated_submodel(const ConvexNbhModel& n, int w) {
  WorldSet reached = world_bit(w);
  for (;;) {
    WorldSet next = reached;
    for (int v : ws_elements(reached)) {
      for (WorldSet x : n.nplus[v]) next |= x;
      for (WorldSet x : n.nminus[v]) next |= x;
    }
    if (next == reached) break;
    reached = next;
  }
  Submodel out;
  out.embedding = ws_elements(reached);
  std::vector<int> to_new(n.n_worlds, -1);
  for (std::size_t i = 0; i < out.embedding.size(); ++i)
    to_new[out.embedding[i]] = static_cast<int>(i);
  auto remap = [&](WorldSet s) {
    WorldSet r = 0;
    for (int v : ws_elements(s)) r |= world_bit(to_new[v]);
    return r;
  };
  out.model.init(static_cast<int>(out.embedding.size()));
  for (std::size_t i = 0; i < out.embedding.size(); ++i) {
    int old = out.embedding[i];
    for (WorldSet x : n.nplus[old]) out.model.nplus[i].push_back(remap(x));
    for (WorldSet x : n.nminus[old]) out.model.nminus[i].push_back(remap(x));
  }
  for (const auto& [p, s] : n.valuation) out.model.valuation[p] = remap(s & reached);
  if (!n.world_names.empty())
    for (int old : out.embedding)
      out.model.world_names.push_back(n.world_name(old));
  out.model.normalize();
  return out;
}

bool is_generated_from(const ConvexNbhModel& n, int w) {
  return static_cast<int>(generated_submodel(n, w).embedding.size()) == n.n_worlds;
}

namespace {

struct ColorSearch {
  // vertices are the distinct member sets; an edge joins sets sharing a family
  std::vector<WorldSet> sets;
  std::vector<std::vector<int>> adj;
  int colors;
  std::vector<int> assigned;

  bool run(std::size_t i) {
    if (i == sets.size()) return true;
    for (int c = 0; c < colors; ++c) {
      bool clash = false;
      for (int j : adj[i])
        if (assigned[j] == c) { clash = true; break; }
      if (clash) continue;
      assigned[i] = c;
      if (run(i + 1)) return true;
      assigned[i] = -1;
    }
    return false;
  }
};

}  // namespace

DerivedResult derived_property(const ConvexNbhModel& n, DerivedCheck check,
                               int colors) {
  switch (check) {
    case DerivedCheck::IntrospectivePlus: {
      for (int w = 0; w < n.n_worlds; ++w)
        for (WorldSet x : n.nplus[w])
          for (int v : ws_elements(x))
            if (std::find(n.nplus[v].begin(), n.nplus[v].end(), x) ==
                n.nplus[v].end())
              return {false,
                      n.set_name(x) + " missing at member " + n.world_name(v),
                      {}};
      return {};
    }
    case DerivedCheck::SerialPlus: {
      for (int w = 0; w < n.n_worlds; ++w)
        if (static_cast<int>(n.nplus[w].size()) < colors)
          return {false,
                  "only " + std::to_string(n.nplus[w].size()) + " members at " +
                      n.world_name(w),
                  {}};
      return {};
    }
    case DerivedCheck::ColorablePlus: {
      ColorSearch cs;
      cs.colors = colors;
      // members ordered by (first world of occurrence, set)
      for (int w = 0; w < n.n_worlds; ++w)
        for (WorldSet x : n.nplus[w])
          if (std::find(cs.sets.begin(), cs.sets.end(), x) == cs.sets.end())
            cs.sets.push_back(x);
      cs.adj.assign(cs.sets.size(), {});
      auto index_of = [&](WorldSet x) {
        return static_cast<int>(std::find(cs.sets.begin(), cs.sets.end(), x) -
                                cs.sets.begin());
      };
      for (int w = 0; w < n.n_worlds; ++w)
        for (WorldSet x : n.nplus[w])
          for (WorldSet y : n.nplus[w])
            if (x != y) cs.adj[index_of(x)].push_back(index_of(y));
      cs.assigned.assign(cs.sets.size(), -1);
      if (!cs.run(0)) return {false, "no coloring found", {}};
      DerivedResult r;
      for (std::size_t i = 0; i < cs.sets.size(); ++i)
        r.coloring[cs.sets[i]] = cs.assigned[i];
      return r;
    }
  }
  return {};
}

}  // namespace bundlekit
