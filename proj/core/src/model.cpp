#include "promap/model.hpp"

#include <sstream>

#include "promap/diagnostics.hpp"

namespace promap {

std::string to_string(const SourceSpan& span) {
  std::ostringstream out;
  out << span.file << ':' << span.line << ':' << span.column;
  return out.str();
}

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "error";
}

std::optional<Severity> severity_from_string(std::string_view text) {
  if (text == "info") return Severity::Info;
  if (text == "warning") return Severity::Warning;
  if (text == "error") return Severity::Error;
  return std::nullopt;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::Error) return true;
  }
  return false;
}

std::string render(const Diagnostic& diagnostic) {
  std::ostringstream out;
  if (diagnostic.span) out << to_string(*diagnostic.span) << ": ";
  out << to_string(diagnostic.severity) << ' ' << diagnostic.code << ": " << diagnostic.message;
  return out.str();
}

bool operator==(const ProcessMap& a, const ProcessMap& b) {
  return a.name == b.name && a.processes == b.processes && a.ea_elements == b.ea_elements &&
         a.categories == b.categories && a.phases == b.phases && a.relations == b.relations &&
         a.groups == b.groups && a.schema_version == b.schema_version;
}

const Process* find_process(const ProcessMap& map, std::string_view id) {
  auto it = map.processes.find(std::string(id));
  return it == map.processes.end() ? nullptr : &it->second;
}

std::vector<Relation> relations_of_kind(const ProcessMap& map, RelationKind kind) {
  std::vector<Relation> result;
  for (const auto& relation : map.relations) {
    if (relation.kind == kind) result.push_back(relation);
  }
  return result;
}

std::string_view to_string(CustomerKind kind) {
  switch (kind) {
    case CustomerKind::ExternalCustomer: return "external_customer";
    case CustomerKind::InternalActor: return "internal_actor";
    case CustomerKind::InternalProcess: return "internal_process";
  }
  return "external_customer";
}

std::string_view to_string(OutputKind kind) {
  return kind == OutputKind::Product ? "product" : "outcome";
}

std::string_view to_string(EAKind kind) {
  switch (kind) {
    case EAKind::Actor: return "actor";
    case EAKind::Object: return "object";
    case EAKind::Service: return "service";
    case EAKind::ExternalCustomer: return "external_customer";
  }
  return "actor";
}

std::string_view to_string(ObjectKind kind) {
  switch (kind) {
    case ObjectKind::Permanent: return "permanent";
    case ObjectKind::Case: return "case";
    case ObjectKind::Abstract: return "abstract";
  }
  return "permanent";
}

std::string_view to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::Trigger: return "trigger";
    case RelationKind::Flow: return "flow";
    case RelationKind::Decomposition: return "decomposition";
    case RelationKind::Specialization: return "specialization";
  }
  return "trigger";
}

std::string_view to_string(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::InCategory: return "in_category";
    case CriterionKind::InPhase: return "in_phase";
    case CriterionKind::OwnedBy: return "owned_by";
    case CriterionKind::Provides: return "provides";
    case CriterionKind::Uses: return "uses";
    case CriterionKind::Handles: return "handles";
    case CriterionKind::Property: return "property";
    case CriterionKind::ExplicitList: return "explicit_list";
  }
  return "explicit_list";
}

std::optional<CustomerKind> customer_kind_from_string(std::string_view text) {
  if (text == "external_customer") return CustomerKind::ExternalCustomer;
  if (text == "internal_actor") return CustomerKind::InternalActor;
  if (text == "internal_process") return CustomerKind::InternalProcess;
  return std::nullopt;
}

std::optional<OutputKind> output_kind_from_string(std::string_view text) {
  if (text == "product") return OutputKind::Product;
  if (text == "outcome") return OutputKind::Outcome;
  return std::nullopt;
}

std::optional<EAKind> ea_kind_from_string(std::string_view text) {
  if (text == "actor") return EAKind::Actor;
  if (text == "object") return EAKind::Object;
  if (text == "service") return EAKind::Service;
  if (text == "external_customer") return EAKind::ExternalCustomer;
  return std::nullopt;
}

std::optional<ObjectKind> object_kind_from_string(std::string_view text) {
  if (text == "permanent") return ObjectKind::Permanent;
  if (text == "case") return ObjectKind::Case;
  if (text == "abstract") return ObjectKind::Abstract;
  return std::nullopt;
}

std::optional<RelationKind> relation_kind_from_string(std::string_view text) {
  if (text == "trigger") return RelationKind::Trigger;
  if (text == "flow") return RelationKind::Flow;
  if (text == "decomposition") return RelationKind::Decomposition;
  if (text == "specialization") return RelationKind::Specialization;
  return std::nullopt;
}

std::optional<CriterionKind> criterion_kind_from_string(std::string_view text) {
  if (text == "in_category") return CriterionKind::InCategory;
  if (text == "in_phase") return CriterionKind::InPhase;
  if (text == "owned_by") return CriterionKind::OwnedBy;
  if (text == "provides") return CriterionKind::Provides;
  if (text == "uses") return CriterionKind::Uses;
  if (text == "handles") return CriterionKind::Handles;
  if (text == "property") return CriterionKind::Property;
  if (text == "explicit_list") return CriterionKind::ExplicitList;
  return std::nullopt;
}

}  // namespace promap
