#pragma once

// Seeded random generators for property and acceptance tests. Every
// generator is a pure function of the RNG state, so fixed seeds give
// reproducible runs.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "promap/assemble.hpp"
#include "promap/draft.hpp"
#include "promap/format.hpp"
#include "promap/model.hpp"
#include "promap/simulate.hpp"

namespace promap::testing {

using Rng = std::mt19937;

inline std::size_t pick(Rng& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

inline bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline std::string numbered(std::string_view prefix, std::size_t i) {
  std::ostringstream out;
  out << prefix << i;
  return out.str();
}

inline std::string random_text(Rng& rng) {
  static const std::vector<std::string> pool = {
      "",
      "plain",
      "Two Words",
      "with \"quotes\"",
      "back\\slash",
      " leading and trailing ",
      "unicode \xC3\xA9\xC3\xA8",
      "hash # not a comment",
      "line\nbreak",
      "tab\tseparated",
  };
  return pool[pick(rng, pool.size())];
}

inline std::string random_key(Rng& rng) {
  static const std::vector<std::string> pool = {
      "goal", "kpi", "location", "channel", "weird key", "tag",
  };
  return pool[pick(rng, pool.size())];
}

/// A referentially valid draft exercising every model feature:
/// categories with parents, phases with ordinals, all element kinds,
/// inputs/outputs with every customer-ref variant, properties, every
/// criterion kind, and relations of all four kinds (possibly stated
/// twice, which assembly collapses).
inline MapDraft random_draft(Rng& rng) {
  MapDraft draft;
  draft.name = random_text(rng);

  std::size_t n_categories = pick(rng, 5);
  for (std::size_t i = 0; i < n_categories; ++i) {
    Category category;
    category.id = numbered("Cat", i);
    category.name = chance(rng, 0.4) ? random_text(rng) : category.id;
    if (i > 0 && chance(rng, 0.5)) category.parent = numbered("Cat", pick(rng, i));
    draft.categories.push_back({std::move(category), std::nullopt});
  }

  std::size_t n_phases = pick(rng, 4);
  for (std::size_t i = 0; i < n_phases; ++i) {
    Phase phase;
    phase.id = numbered("Ph", i);
    phase.name = chance(rng, 0.3) ? random_text(rng) : phase.id;
    if (chance(rng, 0.6)) phase.ordinal = static_cast<std::uint32_t>(i * 2 + pick(rng, 2));
    draft.phases.push_back({std::move(phase), std::nullopt});
  }

  std::size_t n_actors = pick(rng, 4);
  std::size_t n_objects = pick(rng, 4);
  std::size_t n_services = pick(rng, 3);
  std::size_t n_customers = pick(rng, 3);
  for (std::size_t i = 0; i < n_actors; ++i) {
    draft.ea_elements.push_back(
        {{numbered("Act", i), random_text(rng), EAKind::Actor, ObjectKind::Permanent},
         std::nullopt});
  }
  for (std::size_t i = 0; i < n_objects; ++i) {
    auto kind = static_cast<ObjectKind>(pick(rng, 3));
    draft.ea_elements.push_back(
        {{numbered("Obj", i), random_text(rng), EAKind::Object, kind}, std::nullopt});
  }
  for (std::size_t i = 0; i < n_services; ++i) {
    draft.ea_elements.push_back(
        {{numbered("Svc", i), random_text(rng), EAKind::Service, ObjectKind::Permanent},
         std::nullopt});
  }
  for (std::size_t i = 0; i < n_customers; ++i) {
    draft.ea_elements.push_back(
        {{numbered("Cust", i), random_text(rng), EAKind::ExternalCustomer, ObjectKind::Permanent},
         std::nullopt});
  }
  // Display names default to ids above only sometimes; normalize empties.
  for (auto& element : draft.ea_elements) {
    if (element.value.name.empty() || chance(rng, 0.5)) element.value.name = element.value.id;
  }

  std::size_t n_processes = 1 + pick(rng, 8);
  for (std::size_t i = 0; i < n_processes; ++i) {
    Process process;
    process.id = numbered("P", i);
    process.name = chance(rng, 0.4) ? random_text(rng) : process.id;
    if (process.name.empty()) process.name = process.id;
    for (std::size_t c = 0; c < n_categories; ++c) {
      if (chance(rng, 0.3)) process.categories.insert(numbered("Cat", c));
    }
    for (std::size_t p = 0; p < n_phases; ++p) {
      if (chance(rng, 0.25)) process.phases.insert(numbered("Ph", p));
    }
    if (n_actors > 0 && chance(rng, 0.5)) {
      process.owners.insert(numbered("Act", pick(rng, n_actors)));
    }
    if (n_services > 0 && chance(rng, 0.4)) {
      process.provides.insert(numbered("Svc", pick(rng, n_services)));
    }
    if (n_objects > 0 && chance(rng, 0.4)) {
      process.uses.insert(numbered("Obj", pick(rng, n_objects)));
    }
    if (n_objects > 0 && chance(rng, 0.4)) {
      process.handles.insert(numbered("Obj", pick(rng, n_objects)));
    }
    std::size_t n_inputs = pick(rng, 3);
    for (std::size_t k = 0; k < n_inputs; ++k) {
      CustomerRef source;
      switch (pick(rng, 3)) {
        case 0:
          if (n_customers == 0) continue;
          source = {CustomerKind::ExternalCustomer, numbered("Cust", pick(rng, n_customers))};
          break;
        case 1:
          if (n_actors == 0) continue;
          source = {CustomerKind::InternalActor, numbered("Act", pick(rng, n_actors))};
          break;
        default: {
          if (n_processes < 2) continue;
          std::size_t other = pick(rng, n_processes);
          if (other == i) other = (other + 1) % n_processes;
          source = {CustomerKind::InternalProcess, numbered("P", other)};
          break;
        }
      }
      process.inputs.push_back({"request " + std::to_string(k), source});
    }
    std::size_t n_outputs = pick(rng, 3);
    for (std::size_t k = 0; k < n_outputs; ++k) {
      CustomerRef destination;
      switch (pick(rng, 3)) {
        case 0:
          if (n_customers == 0) continue;
          destination = {CustomerKind::ExternalCustomer, numbered("Cust", pick(rng, n_customers))};
          break;
        case 1:
          if (n_actors == 0) continue;
          destination = {CustomerKind::InternalActor, numbered("Act", pick(rng, n_actors))};
          break;
        default: {
          if (n_processes < 2) continue;
          std::size_t other = pick(rng, n_processes);
          if (other == i) other = (other + 1) % n_processes;
          destination = {CustomerKind::InternalProcess, numbered("P", other)};
          break;
        }
      }
      auto kind = chance(rng, 0.5) ? OutputKind::Product : OutputKind::Outcome;
      process.outputs.push_back({"result " + std::to_string(k), kind, destination});
    }
    std::size_t n_properties = pick(rng, 3);
    for (std::size_t k = 0; k < n_properties; ++k) {
      process.properties[random_key(rng)] = random_text(rng);
    }
    draft.processes.push_back({std::move(process), std::nullopt});
  }

  std::size_t n_relations = pick(rng, 12);
  for (std::size_t i = 0; i < n_relations && n_processes >= 2; ++i) {
    auto kind = static_cast<RelationKind>(pick(rng, 4));
    std::size_t from = pick(rng, n_processes);
    std::size_t to = pick(rng, n_processes);
    if (from == to) to = (to + 1) % n_processes;
    draft.relations.push_back(
        {{kind, numbered("P", from), numbered("P", to)}, std::nullopt});
    // Occasionally restate a relation; assembly must collapse it.
    if (chance(rng, 0.15)) {
      draft.relations.push_back(
          {{kind, numbered("P", from), numbered("P", to)}, std::nullopt});
    }
  }

  std::size_t n_groups = pick(rng, 4);
  for (std::size_t i = 0; i < n_groups; ++i) {
    Group group;
    group.name = "group " + std::to_string(i);
    switch (pick(rng, 8)) {
      case 0:
        if (n_categories > 0) {
          group.criterion = {CriterionKind::InCategory, numbered("Cat", pick(rng, n_categories)),
                             "", ""};
          break;
        }
        [[fallthrough]];
      case 1:
        if (n_phases > 0) {
          group.criterion = {CriterionKind::InPhase, numbered("Ph", pick(rng, n_phases)), "", ""};
          break;
        }
        [[fallthrough]];
      case 2:
        if (n_actors > 0) {
          group.criterion = {CriterionKind::OwnedBy, numbered("Act", pick(rng, n_actors)), "", ""};
          break;
        }
        [[fallthrough]];
      case 3:
        if (n_services > 0) {
          group.criterion = {CriterionKind::Provides, numbered("Svc", pick(rng, n_services)), "",
                             ""};
          break;
        }
        [[fallthrough]];
      case 4:
        if (n_objects > 0) {
          group.criterion = {CriterionKind::Uses, numbered("Obj", pick(rng, n_objects)), "", ""};
          break;
        }
        [[fallthrough]];
      case 5:
        if (n_objects > 0) {
          group.criterion = {CriterionKind::Handles, numbered("Obj", pick(rng, n_objects)), "",
                             ""};
          break;
        }
        [[fallthrough]];
      case 6:
        group.criterion = {CriterionKind::Property, "", random_key(rng), random_text(rng)};
        break;
      default: {
        group.criterion = {CriterionKind::ExplicitList, "", "", ""};
        std::set<std::string> members;
        for (std::size_t p = 0; p < n_processes; ++p) {
          if (chance(rng, 0.3)) members.insert(numbered("P", p));
        }
        group.explicit_members = std::move(members);
        break;
      }
    }
    draft.groups.push_back({std::move(group), std::nullopt});
  }
  return draft;
}

/// Assembles a random draft; generated drafts are valid by construction.
inline ProcessMap random_map(Rng& rng) {
  AssemblyResult result = assemble(random_draft(rng));
  if (!result.ok()) {
    std::ostringstream message;
    message << "random draft failed to assemble:";
    for (const auto& diagnostic : result.diagnostics) message << ' ' << diagnostic.message;
    throw std::logic_error(message.str());
  }
  return std::move(*result.map);
}

/// Bare processes plus random Trigger/Flow edges, for the chain oracle.
inline ProcessMap random_ordering_map(Rng& rng, std::size_t max_processes) {
  MapDraft draft;
  draft.name = "ordering";
  std::size_t n = 2 + pick(rng, max_processes - 1);
  for (std::size_t i = 0; i < n; ++i) {
    Process process;
    process.id = numbered("P", i);
    process.name = process.id;
    draft.processes.push_back({std::move(process), std::nullopt});
  }
  std::size_t n_edges = pick(rng, 2 * n);
  for (std::size_t i = 0; i < n_edges; ++i) {
    std::size_t from = pick(rng, n);
    std::size_t to = pick(rng, n);
    if (from == to) to = (to + 1) % n;
    auto kind = chance(rng, 0.5) ? RelationKind::Trigger : RelationKind::Flow;
    draft.relations.push_back({{kind, numbered("P", from), numbered("P", to)}, std::nullopt});
  }
  AssemblyResult result = assemble(draft);
  return std::move(*result.map);
}

/// Random specialization DAG (edges run from higher to lower rank in a
/// shuffled order, so cycles cannot form), for the family oracle.
inline ProcessMap random_specialization_map(Rng& rng, std::size_t max_processes) {
  MapDraft draft;
  draft.name = "families";
  std::size_t n = 2 + pick(rng, max_processes - 1);
  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  std::shuffle(rank.begin(), rank.end(), rng);
  for (std::size_t i = 0; i < n; ++i) {
    Process process;
    process.id = numbered("P", i);
    process.name = process.id;
    draft.processes.push_back({std::move(process), std::nullopt});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rank[i] > rank[j] && chance(rng, 0.2)) {
        draft.relations.push_back(
            {{RelationKind::Specialization, numbered("P", i), numbered("P", j)}, std::nullopt});
      }
    }
  }
  AssemblyResult result = assemble(draft);
  return std::move(*result.map);
}

/// Terminating simulation input: triggers form a DAG, flows are
/// unrestricted, stimuli reference declared processes.
inline std::pair<ProcessMap, Scenario> random_simulation_pair(Rng& rng,
                                                              std::size_t max_processes) {
  MapDraft draft;
  draft.name = "simulation";
  std::size_t n = 2 + pick(rng, max_processes - 1);
  for (std::size_t i = 0; i < n; ++i) {
    Process process;
    process.id = numbered("P", i);
    process.name = process.id;
    draft.processes.push_back({std::move(process), std::nullopt});
  }
  for (std::size_t from = 0; from < n; ++from) {
    for (std::size_t to = from + 1; to < n; ++to) {
      if (chance(rng, 0.25)) {
        draft.relations.push_back(
            {{RelationKind::Trigger, numbered("P", from), numbered("P", to)}, std::nullopt});
      }
    }
  }
  std::size_t n_flows = pick(rng, n);
  for (std::size_t i = 0; i < n_flows; ++i) {
    std::size_t from = pick(rng, n);
    std::size_t to = pick(rng, n);
    if (from == to) to = (to + 1) % n;
    draft.relations.push_back(
        {{RelationKind::Flow, numbered("P", from), numbered("P", to)}, std::nullopt});
  }
  AssemblyResult result = assemble(draft);

  Scenario scenario;
  std::size_t n_stimuli = 1 + pick(rng, 3);
  for (std::size_t i = 0; i < n_stimuli; ++i) {
    scenario.stimuli.push_back({numbered("P", pick(rng, n)), "stimulus"});
  }
  return {std::move(*result.map), std::move(scenario)};
}

/// A syntactically valid DSL program (canonical text of a random map).
inline std::string random_program(Rng& rng) {
  return format(random_map(rng));
}

/// Statements that would give a process interior structure; the grammar
/// must reject every one of them.
inline std::string random_interior_statement(Rng& rng) {
  static const std::vector<std::string> pool = {
      "task Validate",
      "gateway Decide",
      "event Started",
      "activity Review",
      "subprocess Inner",
      "process Nested { }",
      "sequence Validate then Review",
      "step One",
  };
  return pool[pick(rng, pool.size())];
}

/// Injects an interior statement into some process body of a valid
/// program. Returns the mutated text, or an empty string when the
/// program has no process block to mutate.
inline std::string inject_interior_statement(Rng& rng, const std::string& program) {
  std::vector<std::size_t> insertion_points;
  std::size_t search = 0;
  while (true) {
    std::size_t at = program.find("process ", search);
    if (at == std::string::npos) break;
    std::size_t brace = program.find('{', at);
    std::size_t line_end = program.find('\n', at);
    if (brace != std::string::npos && line_end != std::string::npos && brace < line_end) {
      insertion_points.push_back(brace + 1);
    }
    search = at + 8;
  }
  if (insertion_points.empty()) return {};
  std::size_t point = insertion_points[pick(rng, insertion_points.size())];
  std::string mutated = program;
  mutated.insert(point, "\n    " + random_interior_statement(rng) + "\n");
  return mutated;
}

}  // namespace promap::testing
