#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "bundlekit/bisim.hpp"
#include "bundlekit/kripke.hpp"
#include "bundlekit/neighborhood.hpp"
#include "bundlekit/representation.hpp"

namespace bundlekit {

using json = nlohmann::json;

// Kripke file: {"worlds": n | [names], "agents": {"a": {"arity": 1}},
//               "relations": {"a": [[w, v...], ...]}, "valuation": {"p": [..]},
//               "relation_z": [[w, v], ...] (optional)}
KripkeModel kripke_from_json(const json& j);
json kripke_to_json(const KripkeModel& m);

// Neighborhood file: {"worlds": n | [names], "nplus": {"w": [[...], ...]},
//                     "nminus": {...}, "valuation": {...}}
ConvexNbhModel nbh_model_from_json(const json& j);
json nbh_model_to_json(const ConvexNbhModel& n);

Relation relation_from_json(const json& j, const KripkeModel& ctx);
json relation_to_json(const Relation& r, const KripkeModel& ctx);

json coloring_certificate(const ConvexNbhModel& n, const Coloring& c,
                          const std::vector<std::string>& agent_names);
json two_block_certificate(const BeliefModel& b);

KripkeModel load_kripke_file(const std::string& path);
ConvexNbhModel load_nbh_file(const std::string& path);
json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace bundlekit
