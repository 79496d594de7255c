#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "promap/model.hpp"

namespace promap {

enum class TriggerClass { External, Internal, Hybrid, Untriggered };

std::string_view to_string(TriggerClass trigger_class);

/// Classifies every process by its trigger sources. External customer
/// inputs count as external sources; internal-actor inputs,
/// internal-process inputs, and incoming Trigger relations count as
/// internal sources.
std::map<std::string, TriggerClass> classify_triggering(const ProcessMap& map);

struct ChainEdge {
  std::string from;
  std::string to;
  RelationKind kind = RelationKind::Trigger;  // Trigger or Flow

  bool operator==(const ChainEdge&) const = default;
};

/// A weakly connected component of the ordering subgraph (Trigger and
/// Flow relations), with at least two members.
struct ProcessChain {
  std::string id;
  std::set<std::string> members;
  std::vector<ChainEdge> edges;

  bool operator==(const ProcessChain&) const = default;
};

/// Chains ordered by smallest member identifier; isolated processes
/// yield no chain.
std::vector<ProcessChain> derive_chains(const ProcessMap& map);

/// A standard process together with all processes that reach it through
/// Specialization edges (a variant of a variant is still a variant).
struct ProcessFamily {
  std::string standard;
  std::set<std::string> variants;

  bool operator==(const ProcessFamily&) const = default;
};

/// One family per process with at least one incoming Specialization
/// edge, ordered by standard identifier. Throws std::invalid_argument
/// when the specialization digraph is cyclic; validate first.
std::vector<ProcessFamily> derive_families(const ProcessMap& map);

struct GroupResult {
  std::string name;
  std::set<std::string> members;

  bool operator==(const GroupResult&) const = default;
};

/// Evaluates every declared group, in declaration order. Category
/// criteria match the category and all its descendants.
std::vector<GroupResult> evaluate_groups(const ProcessMap& map);

/// All processes reachable from `root` via Decomposition edges,
/// excluding the root itself. Throws std::invalid_argument when the
/// root is unknown.
std::set<std::string> containment_closure(const ProcessMap& map, const std::string& root);

/// Internally triggered processes not transitively contained in any
/// externally triggered process.
std::set<std::string> orphan_internal_processes(const ProcessMap& map);

/// Every analysis over one map, as rendered by the CLI and the
/// interchange `analysis` section.
struct AnalysisReport {
  std::map<std::string, TriggerClass> classification;
  std::vector<ProcessChain> chains;
  std::vector<ProcessFamily> families;
  std::vector<GroupResult> groups;
  std::set<std::string> orphans;
};

AnalysisReport analyze(const ProcessMap& map);

}  // namespace promap
