#pragma once

#include <map>
#include <string>
#include <vector>

#include "bundlekit/bisim.hpp"
#include "bundlekit/kripke.hpp"
#include "bundlekit/neighborhood.hpp"

namespace bundlekit {

struct ReprResult {
  bool ok = true;
  int world = -1;
  std::string detail;
};

// Both transfer directions between the generated neighborhoods of m and the
// families of n, on n's worlds (embedded by index into m).
ReprResult is_representation(const ConvexNbhModel& n, const KripkeModel& m,
                             const TermPtr& tau, const Caps& caps = {});

struct Coloring {
  std::map<WorldSet, int> by_set;  // member set -> index into the agent list
};

enum class GroupMode { S5, KD45 };

struct GroupModel {
  KripkeModel model;
  Coloring coloring;
  TermPtr tau;
};

// Reads each world's family as the successor sets of |agents| relations,
// picked out by a coloring that is injective on every family.
GroupModel represent_group_knowledge(const ConvexNbhModel& n,
                                     const std::vector<std::string>& agent_names,
                                     GroupMode mode);

struct BeliefModel {
  KripkeModel model;
  WorldSet x0 = 0;
  Relation base;  // the singleton-member relation before the block is added
  TermPtr tau;
};

BeliefModel represent_belief_without_knowledge(const ConvexNbhModel& n, int w0,
                                               bool want_s4f);

struct UnravelNode {
  int parent = -1;  // -1 for the root
  int j = 0;
  WorldSet source_set = 0;  // the member set of the source model being copied
  int source_world = 0;
  int depth = 0;
};

enum class UnravelMode { Sym, Refl };

struct UnravelResult {
  ConvexNbhModel model;
  std::vector<UnravelNode> nodes;
  WorldSet frontier = 0;  // nodes whose families were cut off by the bound
  int root = 0;
  int n = 0;
};

// Depth-bounded tree unfolding that makes every family introspective,
// exactly-n-sized and n-colorable away from the frontier, preserving truth up
// to the corresponding modal depth.
UnravelResult unravel(const ConvexNbhModel& n, int w, int depth,
                      UnravelMode mode, int colors = 0);

}  // namespace bundlekit
