#include "promap/analysis.hpp"

#include <deque>
#include <sstream>
#include <stdexcept>

#include "graph.hpp"

namespace promap {

std::string_view to_string(TriggerClass trigger_class) {
  switch (trigger_class) {
    case TriggerClass::External: return "external";
    case TriggerClass::Internal: return "internal";
    case TriggerClass::Hybrid: return "hybrid";
    case TriggerClass::Untriggered: return "untriggered";
  }
  return "untriggered";
}

std::map<std::string, TriggerClass> classify_triggering(const ProcessMap& map) {
  std::set<std::string> has_incoming_trigger;
  for (const Relation& relation : map.relations) {
    if (relation.kind == RelationKind::Trigger) has_incoming_trigger.insert(relation.to);
  }
  std::map<std::string, TriggerClass> result;
  for (const auto& [id, process] : map.processes) {
    bool external = false;
    bool internal = has_incoming_trigger.contains(id);
    for (const InputSpec& input : process.inputs) {
      if (input.source.kind == CustomerKind::ExternalCustomer) {
        external = true;
      } else {
        internal = true;
      }
    }
    TriggerClass trigger_class = TriggerClass::Untriggered;
    if (external && internal) {
      trigger_class = TriggerClass::Hybrid;
    } else if (external) {
      trigger_class = TriggerClass::External;
    } else if (internal) {
      trigger_class = TriggerClass::Internal;
    }
    result.emplace(id, trigger_class);
  }
  return result;
}

std::vector<ProcessChain> derive_chains(const ProcessMap& map) {
  // Undirected view of the ordering subgraph (Trigger and Flow edges).
  std::map<std::string, std::vector<std::string>> neighbours;
  for (const Relation& relation : map.relations) {
    if (relation.kind != RelationKind::Trigger && relation.kind != RelationKind::Flow) continue;
    neighbours[relation.from].push_back(relation.to);
    neighbours[relation.to].push_back(relation.from);
  }

  std::set<std::string> visited;
  std::vector<std::set<std::string>> components;
  for (const auto& [start, _] : neighbours) {
    if (visited.contains(start)) continue;
    std::set<std::string> component;
    std::deque<std::string> frontier{start};
    visited.insert(start);
    while (!frontier.empty()) {
      std::string node = frontier.front();
      frontier.pop_front();
      component.insert(node);
      for (const std::string& next : neighbours[node]) {
        if (visited.insert(next).second) frontier.push_back(next);
      }
    }
    components.push_back(std::move(component));
  }
  // `neighbours` keys are sorted, so components come out ordered by
  // smallest member already.
  std::vector<ProcessChain> chains;
  for (const auto& component : components) {
    if (component.size() < 2) continue;  // cannot happen without self-loops, kept for safety
    ProcessChain chain;
    std::ostringstream id;
    id << "chain-" << (chains.size() + 1);
    chain.id = id.str();
    chain.members = component;
    for (const Relation& relation : map.relations) {
      if (relation.kind != RelationKind::Trigger && relation.kind != RelationKind::Flow) continue;
      if (component.contains(relation.from)) {
        chain.edges.push_back({relation.from, relation.to, relation.kind});
      }
    }
    chains.push_back(std::move(chain));
  }
  return chains;
}

std::vector<ProcessFamily> derive_families(const ProcessMap& map) {
  std::map<std::string, std::vector<std::string>> forward;   // variant -> standards
  std::map<std::string, std::vector<std::string>> incoming;  // standard -> variants
  for (const auto& [id, _] : map.processes) forward[id];
  for (const Relation& relation : map.relations) {
    if (relation.kind != RelationKind::Specialization) continue;
    forward[relation.from].push_back(relation.to);
    incoming[relation.to].push_back(relation.from);
  }
  if (!detail::nontrivial_sccs(forward).empty()) {
    throw std::invalid_argument("specialization digraph is cyclic; validate the map first");
  }

  std::vector<ProcessFamily> families;
  for (const auto& [standard, direct_variants] : incoming) {
    ProcessFamily family;
    family.standard = standard;
    std::deque<std::string> frontier(direct_variants.begin(), direct_variants.end());
    while (!frontier.empty()) {
      std::string variant = frontier.front();
      frontier.pop_front();
      if (!family.variants.insert(variant).second) continue;
      if (auto it = incoming.find(variant); it != incoming.end()) {
        for (const std::string& next : it->second) frontier.push_back(next);
      }
    }
    families.push_back(std::move(family));
  }
  return families;
}

namespace {

// The criterion category plus all its descendants; cycle-safe.
std::set<std::string> category_with_descendants(const ProcessMap& map, const std::string& root) {
  std::multimap<std::string, std::string> children;
  for (const auto& [id, category] : map.categories) {
    if (category.parent) children.emplace(*category.parent, id);
  }
  std::set<std::string> result;
  std::deque<std::string> frontier{root};
  while (!frontier.empty()) {
    std::string node = frontier.front();
    frontier.pop_front();
    if (!result.insert(node).second) continue;
    auto [begin, end] = children.equal_range(node);
    for (auto it = begin; it != end; ++it) frontier.push_back(it->second);
  }
  return result;
}

bool matches(const Process& process, const Criterion& criterion,
             const std::set<std::string>& category_set) {
  switch (criterion.kind) {
    case CriterionKind::InCategory:
      for (const std::string& category : process.categories) {
        if (category_set.contains(category)) return true;
      }
      return false;
    case CriterionKind::InPhase: return process.phases.contains(criterion.id);
    case CriterionKind::OwnedBy: return process.owners.contains(criterion.id);
    case CriterionKind::Provides: return process.provides.contains(criterion.id);
    case CriterionKind::Uses: return process.uses.contains(criterion.id);
    case CriterionKind::Handles: return process.handles.contains(criterion.id);
    case CriterionKind::Property: {
      auto it = process.properties.find(criterion.key);
      return it != process.properties.end() && it->second == criterion.value;
    }
    case CriterionKind::ExplicitList: return false;  // handled by the caller
  }
  return false;
}

}  // namespace

std::vector<GroupResult> evaluate_groups(const ProcessMap& map) {
  std::vector<GroupResult> results;
  for (const Group& group : map.groups) {
    GroupResult result;
    result.name = group.name;
    if (group.criterion.kind == CriterionKind::ExplicitList) {
      if (group.explicit_members) result.members = *group.explicit_members;
    } else {
      std::set<std::string> category_set;
      if (group.criterion.kind == CriterionKind::InCategory) {
        category_set = category_with_descendants(map, group.criterion.id);
      }
      for (const auto& [id, process] : map.processes) {
        if (matches(process, group.criterion, category_set)) result.members.insert(id);
      }
    }
    results.push_back(std::move(result));
  }
  return results;
}

std::set<std::string> containment_closure(const ProcessMap& map, const std::string& root) {
  if (!map.processes.contains(root)) {
    throw std::invalid_argument("unknown process '" + root + "'");
  }
  std::multimap<std::string, std::string> children;
  for (const Relation& relation : map.relations) {
    if (relation.kind == RelationKind::Decomposition) {
      children.emplace(relation.from, relation.to);
    }
  }
  std::set<std::string> closure;
  std::deque<std::string> frontier{root};
  std::set<std::string> visited{root};
  while (!frontier.empty()) {
    std::string node = frontier.front();
    frontier.pop_front();
    auto [begin, end] = children.equal_range(node);
    for (auto it = begin; it != end; ++it) {
      if (visited.insert(it->second).second) {
        closure.insert(it->second);
        frontier.push_back(it->second);
      }
    }
  }
  closure.erase(root);
  return closure;
}

std::set<std::string> orphan_internal_processes(const ProcessMap& map) {
  auto classes = classify_triggering(map);
  std::set<std::string> served;
  for (const auto& [id, trigger_class] : classes) {
    if (trigger_class != TriggerClass::External) continue;
    auto closure = containment_closure(map, id);
    served.insert(closure.begin(), closure.end());
  }
  std::set<std::string> orphans;
  for (const auto& [id, trigger_class] : classes) {
    if (trigger_class == TriggerClass::Internal && !served.contains(id)) orphans.insert(id);
  }
  return orphans;
}

AnalysisReport analyze(const ProcessMap& map) {
  AnalysisReport report;
  report.classification = classify_triggering(map);
  report.chains = derive_chains(map);
  report.families = derive_families(map);
  report.groups = evaluate_groups(map);
  report.orphans = orphan_internal_processes(map);
  return report;
}

}  // namespace promap
