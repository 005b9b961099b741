#include "bundlekit/io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace bundlekit {

namespace {

struct WorldIndexer {
  int count = 0;
  std::vector<std::string> names;

  static WorldIndexer from(const json& worlds) {
    WorldIndexer w;
    if (worlds.is_number_integer()) {
      w.count = worlds.get<int>();
    } else if (worlds.is_array()) {
      for (const auto& e : worlds) w.names.push_back(e.get<std::string>());
      w.count = static_cast<int>(w.names.size());
    } else {
      throw ModelError("\"worlds\" must be a count or a list of names");
    }
    return w;
  }

  int index(const json& v) const {
    if (v.is_number_integer()) {
      int i = v.get<int>();
      if (i < 0 || i >= count) throw ModelError("world index out of range");
      return i;
    }
    std::string name = v.get<std::string>();
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    throw ModelError("unknown world name: " + name);
  }

  WorldSet set(const json& list) const {
    WorldSet s = 0;
    for (const auto& e : list) s |= world_bit(index(e));
    return s;
  }
};

json name_or_index(const std::vector<std::string>& names, int w) {
  if (w < static_cast<int>(names.size())) return names[w];
  return w;
}

json set_to_json(const std::vector<std::string>& names, WorldSet s) {
  json out = json::array();
  for (int w : ws_elements(s)) out.push_back(name_or_index(names, w));
  return out;
}

}  // namespace

KripkeModel kripke_from_json(const json& j) {
  WorldIndexer idx = WorldIndexer::from(j.at("worlds"));
  AgentTable table;
  if (j.contains("agents"))
    for (const auto& [name, spec] : j.at("agents").items())
      table.declare(name, spec.contains("arity") ? spec.at("arity").get<int>() : 1);
  KripkeModel m;
  m.init(idx.count, std::move(table));
  m.world_names = idx.names;
  if (j.contains("relations"))
    for (const auto& [name, tuples] : j.at("relations").items()) {
      int a = m.agents.id_of(name);
      if (a < 0) throw ModelError("relation for undeclared agent: " + name);
      for (const auto& t : tuples) {
        std::vector<int> tuple;
        for (const auto& e : t) tuple.push_back(idx.index(e));
        m.add_edge(a, tuple);
      }
    }
  if (j.contains("valuation"))
    for (const auto& [p, list] : j.at("valuation").items())
      m.valuation[p] = idx.set(list);
  m.check_valid();
  return m;
}

json kripke_to_json(const KripkeModel& m) {
  json j;
  if (m.world_names.empty())
    j["worlds"] = m.n_worlds;
  else
    j["worlds"] = m.world_names;
  json agents = json::object();
  json relations = json::object();
  for (int a = 0; a < m.agents.size(); ++a) {
    const Agent& ag = m.agents.agent(a);
    agents[ag.name] = {{"arity", ag.arity}};
    json tuples = json::array();
    for (int w = 0; w < m.n_worlds; ++w)
      for (const auto& t : m.succ[a][w]) {
        json tuple = json::array();
        tuple.push_back(name_or_index(m.world_names, w));
        for (int v : t) tuple.push_back(name_or_index(m.world_names, v));
        tuples.push_back(tuple);
      }
    relations[ag.name] = tuples;
  }
  j["agents"] = agents;
  j["relations"] = relations;
  json val = json::object();
  for (const auto& [p, s] : m.valuation) val[p] = set_to_json(m.world_names, s);
  j["valuation"] = val;
  return j;
}

ConvexNbhModel nbh_model_from_json(const json& j) {
  WorldIndexer idx = WorldIndexer::from(j.at("worlds"));
  ConvexNbhModel n;
  n.init(idx.count);
  n.world_names = idx.names;
  auto read_family = [&](const char* key, std::vector<std::vector<WorldSet>>& fam) {
    if (!j.contains(key)) return;
    for (const auto& [w, sets] : j.at(key).items()) {
      int wi = idx.index(idx.names.empty() ? json(std::stoi(w)) : json(w));
      for (const auto& s : sets) fam[wi].push_back(idx.set(s));
    }
  };
  read_family("nplus", n.nplus);
  read_family("nminus", n.nminus);
  if (j.contains("valuation"))
    for (const auto& [p, list] : j.at("valuation").items())
      n.valuation[p] = idx.set(list);
  n.normalize();
  return n;
}

json nbh_model_to_json(const ConvexNbhModel& n) {
  json j;
  if (n.world_names.empty())
    j["worlds"] = n.n_worlds;
  else
    j["worlds"] = n.world_names;
  auto family = [&](const std::vector<std::vector<WorldSet>>& fam) {
    json out = json::object();
    for (int w = 0; w < n.n_worlds; ++w) {
      json sets = json::array();
      for (WorldSet s : fam[w]) sets.push_back(set_to_json(n.world_names, s));
      out[n.world_name(w)] = sets;
    }
    return out;
  };
  j["nplus"] = family(n.nplus);
  j["nminus"] = family(n.nminus);
  json val = json::object();
  for (const auto& [p, s] : n.valuation) val[p] = set_to_json(n.world_names, s);
  j["valuation"] = val;
  return j;
}

Relation relation_from_json(const json& j, const KripkeModel& ctx) {
  const json& pairs = j.contains("relation_z") ? j.at("relation_z") : j;
  Relation r;
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2)
      throw ModelError("relation entries must be pairs");
    int w = p[0].is_number_integer() ? p[0].get<int>() : ctx.world_index(p[0].get<std::string>());
    int v = p[1].is_number_integer() ? p[1].get<int>() : ctx.world_index(p[1].get<std::string>());
    if (w < 0 || v < 0 || w >= ctx.n_worlds || v >= ctx.n_worlds)
      throw ModelError("relation mentions unknown worlds");
    r.add(w, v);
  }
  return r;
}

json relation_to_json(const Relation& r, const KripkeModel& ctx) {
  json pairs = json::array();
  for (auto [w, v] : r.pairs)
    pairs.push_back({name_or_index(ctx.world_names, w),
                     name_or_index(ctx.world_names, v)});
  return {{"relation_z", pairs}};
}

json coloring_certificate(const ConvexNbhModel& n, const Coloring& c,
                          const std::vector<std::string>& agent_names) {
  json assignment = json::array();
  for (const auto& [set, color] : c.by_set)
    assignment.push_back({{"set", set_to_json(n.world_names, set)},
                          {"agent", agent_names.at(color)}});
  return {{"format", 1}, {"kind", "coloring"}, {"assignment", assignment}};
}

json two_block_certificate(const BeliefModel& b) {
  json base = json::array();
  for (auto [w, v] : b.base.pairs)
    base.push_back({name_or_index(b.model.world_names, w),
                    name_or_index(b.model.world_names, v)});
  return {{"format", 1},
          {"kind", "two_block"},
          {"x0", set_to_json(b.model.world_names, b.x0)},
          {"base_relation", base}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ModelError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

KripkeModel load_kripke_file(const std::string& path) {
  return kripke_from_json(load_json_file(path));
}

ConvexNbhModel load_nbh_file(const std::string& path) {
  return nbh_model_from_json(load_json_file(path));
}

}  // namespace bundlekit
