#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "promap/span.hpp"

namespace promap {

enum class CustomerKind { ExternalCustomer, InternalActor, InternalProcess };

/// Beneficiary of a process: a customer outside the organization, an
/// employee in some role, or another process.
struct CustomerRef {
  CustomerKind kind = CustomerKind::ExternalCustomer;
  std::string id;

  bool operator==(const CustomerRef&) const = default;
};

/// A request to start process execution.
struct InputSpec {
  std::string label;
  CustomerRef source;

  bool operator==(const InputSpec&) const = default;
};

enum class OutputKind { Product, Outcome };

/// A tangible product or intangible outcome delivered to a customer.
struct OutputSpec {
  std::string label;
  OutputKind kind = OutputKind::Product;
  CustomerRef destination;

  bool operator==(const OutputSpec&) const = default;
};

/// Atomic black-box node of the map. Carries linkage to enterprise
/// architecture elements but no interior structure.
struct Process {
  std::string id;
  std::string name;
  std::set<std::string> categories;
  std::set<std::string> phases;
  std::set<std::string> owners;
  std::vector<InputSpec> inputs;
  std::vector<OutputSpec> outputs;
  std::set<std::string> provides;
  std::set<std::string> uses;  // objects in the resource role
  std::set<std::string> handles;
  std::map<std::string, std::string> properties;

  bool operator==(const Process&) const = default;
};

enum class EAKind { Actor, Object, Service, ExternalCustomer };
enum class ObjectKind { Permanent, Case, Abstract };

/// Enterprise architecture element a process can link to. `object_kind`
/// is meaningful only when `kind == EAKind::Object`.
struct EAElement {
  std::string id;
  std::string name;
  EAKind kind = EAKind::Actor;
  ObjectKind object_kind = ObjectKind::Permanent;

  bool operator==(const EAElement&) const = default;
};

struct Category {
  std::string id;
  std::string name;
  std::optional<std::string> parent;

  bool operator==(const Category&) const = default;
};

struct Phase {
  std::string id;
  std::string name;
  std::optional<std::uint32_t> ordinal;

  bool operator==(const Phase&) const = default;
};

enum class RelationKind { Trigger, Flow, Decomposition, Specialization };

/// Directed relation between two processes. `from`/`to` read as src/dst
/// for Trigger and Flow, parent/child for Decomposition, and
/// variant/standard for Specialization.
struct Relation {
  RelationKind kind = RelationKind::Trigger;
  std::string from;
  std::string to;

  bool operator==(const Relation&) const = default;
};

enum class CriterionKind {
  InCategory,
  InPhase,
  OwnedBy,
  Provides,
  Uses,
  Handles,
  Property,
  ExplicitList,
};

/// Grouping criterion. `id` names the referenced element for the
/// element-based kinds; `key`/`value` are used by Property only.
struct Criterion {
  CriterionKind kind = CriterionKind::ExplicitList;
  std::string id;
  std::string key;
  std::string value;

  bool operator==(const Criterion&) const = default;
};

struct Group {
  std::string name;
  Criterion criterion;
  std::optional<std::set<std::string>> explicit_members;

  bool operator==(const Group&) const = default;
};

/// Declaration sites retained for diagnostics. Keys of `declarations`
/// are "<namespace>:<id>" with namespace one of process, ea, category,
/// phase; `relations` is keyed by index into ProcessMap::relations.
struct SourceTable {
  std::map<std::string, SourceSpan> declarations;
  std::map<std::size_t, SourceSpan> relations;
  std::map<std::string, SourceSpan> groups;
};

/// The root model. Values are immutable after assembly; `sources` is
/// auxiliary and excluded from equality.
struct ProcessMap {
  std::string name;
  std::map<std::string, Process> processes;
  std::map<std::string, EAElement> ea_elements;
  std::map<std::string, Category> categories;
  std::map<std::string, Phase> phases;
  std::vector<Relation> relations;
  std::vector<Group> groups;
  std::string schema_version = "promap/1";
  SourceTable sources;

  friend bool operator==(const ProcessMap& a, const ProcessMap& b);
};

/// Returns the process with the given identifier, or nullptr.
const Process* find_process(const ProcessMap& map, std::string_view id);

/// All relations of the requested kind, in declaration order.
std::vector<Relation> relations_of_kind(const ProcessMap& map, RelationKind kind);

std::string_view to_string(CustomerKind kind);
std::string_view to_string(OutputKind kind);
std::string_view to_string(EAKind kind);
std::string_view to_string(ObjectKind kind);
std::string_view to_string(RelationKind kind);
std::string_view to_string(CriterionKind kind);

std::optional<CustomerKind> customer_kind_from_string(std::string_view text);
std::optional<OutputKind> output_kind_from_string(std::string_view text);
std::optional<EAKind> ea_kind_from_string(std::string_view text);
std::optional<ObjectKind> object_kind_from_string(std::string_view text);
std::optional<RelationKind> relation_kind_from_string(std::string_view text);
std::optional<CriterionKind> criterion_kind_from_string(std::string_view text);

}  // namespace promap
