#include "promap/format.hpp"

#include <sstream>

#include "promap/lexer.hpp"

namespace promap {

namespace {

std::string quoted(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('"');
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

void append_display_name(std::ostream& out, const std::string& id, const std::string& name) {
  if (name != id) out << ' ' << quoted(name);
}

void append_customer_ref(std::ostream& out, const CustomerRef& ref) {
  switch (ref.kind) {
    case CustomerKind::ExternalCustomer: out << "customer "; break;
    case CustomerKind::InternalActor: out << "actor "; break;
    case CustomerKind::InternalProcess: out << "process "; break;
  }
  out << ref.id;
}

std::string tag_key(const std::string& key) {
  return is_identifier(key) ? key : quoted(key);
}

void append_process(std::ostream& out, const Process& process) {
  out << "  process " << process.id;
  append_display_name(out, process.id, process.name);
  bool empty = process.categories.empty() && process.phases.empty() && process.owners.empty() &&
               process.inputs.empty() && process.outputs.empty() && process.provides.empty() &&
               process.uses.empty() && process.handles.empty() && process.properties.empty();
  if (empty) {
    out << '\n';
    return;
  }
  out << " {\n";
  for (const auto& category : process.categories) out << "    category " << category << '\n';
  for (const auto& phase : process.phases) out << "    phase " << phase << '\n';
  for (const auto& owner : process.owners) out << "    owner " << owner << '\n';
  for (const InputSpec& input : process.inputs) {
    out << "    input " << quoted(input.label) << " from ";
    append_customer_ref(out, input.source);
    out << '\n';
  }
  for (const OutputSpec& output : process.outputs) {
    out << "    output " << quoted(output.label) << ' ' << to_string(output.kind) << " to ";
    append_customer_ref(out, output.destination);
    out << '\n';
  }
  for (const auto& service : process.provides) out << "    provides " << service << '\n';
  for (const auto& object : process.uses) out << "    uses " << object << '\n';
  for (const auto& object : process.handles) out << "    handles " << object << '\n';
  for (const auto& [key, value] : process.properties) {
    out << "    tag " << tag_key(key) << " = " << quoted(value) << '\n';
  }
  out << "  }\n";
}

void append_relation(std::ostream& out, const Relation& relation) {
  out << "  " << relation.from;
  switch (relation.kind) {
    case RelationKind::Trigger: out << " -> "; break;
    case RelationKind::Flow: out << " ~> "; break;
    case RelationKind::Decomposition: out << " contains "; break;
    case RelationKind::Specialization: out << " variant-of "; break;
  }
  out << relation.to << '\n';
}

void append_group(std::ostream& out, const Group& group) {
  out << "  group " << quoted(group.name);
  switch (group.criterion.kind) {
    case CriterionKind::InCategory: out << " by category " << group.criterion.id; break;
    case CriterionKind::InPhase: out << " by phase " << group.criterion.id; break;
    case CriterionKind::OwnedBy: out << " by owner " << group.criterion.id; break;
    case CriterionKind::Provides: out << " by provides " << group.criterion.id; break;
    case CriterionKind::Uses: out << " by uses " << group.criterion.id; break;
    case CriterionKind::Handles: out << " by handles " << group.criterion.id; break;
    case CriterionKind::Property:
      out << " by tag " << tag_key(group.criterion.key) << " = " << quoted(group.criterion.value);
      break;
    case CriterionKind::ExplicitList: {
      out << " members";
      bool first = true;
      if (group.explicit_members) {
        for (const auto& member : *group.explicit_members) {
          out << (first ? " " : ", ") << member;
          first = false;
        }
      }
      break;
    }
  }
  out << '\n';
}

}  // namespace

std::string format(const ProcessMap& map) {
  std::ostringstream out;
  out << "map " << quoted(map.name) << " {\n";
  for (const auto& [id, category] : map.categories) {
    out << "  category " << id;
    append_display_name(out, id, category.name);
    if (category.parent) out << " parent " << *category.parent;
    out << '\n';
  }
  for (const auto& [id, phase] : map.phases) {
    out << "  phase " << id;
    append_display_name(out, id, phase.name);
    if (phase.ordinal) out << " ordinal " << *phase.ordinal;
    out << '\n';
  }
  for (const auto& [id, element] : map.ea_elements) {
    switch (element.kind) {
      case EAKind::Actor: out << "  actor " << id; break;
      case EAKind::Object: out << "  object " << id; break;
      case EAKind::Service: out << "  service " << id; break;
      case EAKind::ExternalCustomer: out << "  external customer " << id; break;
    }
    append_display_name(out, id, element.name);
    if (element.kind == EAKind::Object && element.object_kind != ObjectKind::Permanent) {
      out << " kind " << to_string(element.object_kind);
    }
    out << '\n';
  }
  for (const auto& [id, process] : map.processes) append_process(out, process);
  for (const Relation& relation : map.relations) append_relation(out, relation);
  for (const Group& group : map.groups) append_group(out, group);
  out << "}\n";
  return out.str();
}

}  // namespace promap
