#pragma once

#include <string>
#include <vector>

#include "bundlekit/term.hpp"

namespace bundlekit {

// Named bundles from the literature. `term` is the usual spelling; `cross_form`
// is an equivalent conjunction-of-monotone-parts spelling that the syntactic
// convexity classifier recognizes (they coincide for most entries).
struct NamedBundle {
  std::string name;
  TermPtr term;
  TermPtr cross_form;
  bool needs_serial = false;
};

// Agents used by the catalog: unary a, b, k.
AgentTable catalog_agents();
std::vector<NamedBundle> bundle_catalog(const AgentTable& agents);

TermPtr someone_knows_term(const std::vector<int>& agent_ids);
TermPtr group_disagreement_term(const std::vector<int>& agent_ids);
TermPtr belief_without_knowledge_term(int agent_id);

}  // namespace bundlekit
