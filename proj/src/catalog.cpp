#include "bundlekit/catalog.hpp"

#include <stdexcept>

namespace bundlekit {

AgentTable catalog_agents() {
  AgentTable t;
  t.declare("a", 1);
  t.declare("b", 1);
  t.declare("k", 1);
  return t;
}

std::vector<NamedBundle> bundle_catalog(const AgentTable& agents) {
  int a = agents.id_of("a"), b = agents.id_of("b"), k = agents.id_of("k");
  if (a < 0 || b < 0 || k < 0)
    throw ModelError("catalog needs unary agents a, b, k");
  auto P = plus_leaf();
  auto M = minus_leaf();
  std::vector<NamedBundle> out;
  auto add = [&](std::string name, TermPtr t, TermPtr cross = nullptr,
                 bool serial = false) {
    out.push_back({std::move(name), t, cross ? cross : t, serial});
  };

  add("contingency", and_term(diamond(a, P), diamond(a, M)));
  add("accident", and_term(P, diamond(a, M)));
  add("false-belief", and_term(box(a, P), M));
  add("strong-accident", and_term(box(a, M), P));
  add("disjunctive-ignorance",
      and_term(or_term(P, diamond(a, P)), diamond(a, M)));
  add("weak-contingency",
      and_term(or_term(P, diamond(a, P)), or_term(M, diamond(a, M))));
  add("dk-ignorance", and_term(box(b, box(k, P)), diamond(k, M)));
  add("box-diamond", and_term(box(a, P), diamond(b, M)));
  add("box-box", and_term(box(a, P), box(b, M)));
  add("diamond-box", and_term(diamond(a, P), box(b, M)));
  add("diamond-diamond", and_term(diamond(a, P), diamond(b, M)));
  add("someone-knows", or_term(box(a, P), box(b, P)));
  add("secret-knowledge", and_term(box(a, P), box(a, diamond(b, M))));
  add("moderate-disagreement",
      or_term(and_term(box(a, P), diamond(b, M)),
              and_term(box(b, P), diamond(a, M))),
      and_term(or_term(box(a, P), box(b, P)),
               or_term(diamond(a, M), diamond(b, M))));
  add("radical-ignorance",
      or_term(and_term(box(a, P), M), and_term(box(a, M), P)),
      and_term(or_term(P, box(a, P)), or_term(M, box(a, M))),
      /*serial=*/true);
  add("strong-disagreement",
      or_term(and_term(box(a, M), box(b, P)), and_term(box(a, P), box(b, M))),
      and_term(or_term(box(a, P), box(b, P)), or_term(box(a, M), box(b, M))),
      /*serial=*/true);
  return out;
}

TermPtr someone_knows_term(const std::vector<int>& agent_ids) {
  if (agent_ids.empty()) throw ModelError("need at least one agent");
  TermPtr t = box(agent_ids[0], plus_leaf());
  for (std::size_t i = 1; i < agent_ids.size(); ++i)
    t = or_term(t, box(agent_ids[i], plus_leaf()));
  return t;
}

TermPtr group_disagreement_term(const std::vector<int>& agent_ids) {
  if (agent_ids.empty()) throw ModelError("need at least one agent");
  TermPtr t;
  for (int a : agent_ids)
    for (int b : agent_ids) {
      TermPtr part = and_term(box(a, plus_leaf()), box(b, minus_leaf()));
      t = t ? or_term(t, part) : part;
    }
  return t;
}

TermPtr belief_without_knowledge_term(int agent_id) {
  return and_term(diamond(agent_id, box(agent_id, plus_leaf())),
                  diamond(agent_id, minus_leaf()));
}

}  // namespace bundlekit
