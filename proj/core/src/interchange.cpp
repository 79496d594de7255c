#include "promap/interchange.hpp"

#include <nlohmann/json.hpp>

#include <limits>
#include <utility>

#include "promap/assemble.hpp"

namespace promap {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json customer_ref_to_json(const CustomerRef& ref) {
  ordered_json out;
  out["kind"] = to_string(ref.kind);
  out["ref"] = ref.id;
  return out;
}

ordered_json process_to_json(const Process& process) {
  ordered_json out;
  out["id"] = process.id;
  out["name"] = process.name;
  out["categories"] = process.categories;
  out["phases"] = process.phases;
  out["owners"] = process.owners;
  ordered_json inputs = ordered_json::array();
  for (const InputSpec& input : process.inputs) {
    ordered_json entry;
    entry["label"] = input.label;
    entry["source"] = customer_ref_to_json(input.source);
    inputs.push_back(std::move(entry));
  }
  out["inputs"] = std::move(inputs);
  ordered_json outputs = ordered_json::array();
  for (const OutputSpec& output : process.outputs) {
    ordered_json entry;
    entry["label"] = output.label;
    entry["kind"] = to_string(output.kind);
    entry["destination"] = customer_ref_to_json(output.destination);
    outputs.push_back(std::move(entry));
  }
  out["outputs"] = std::move(outputs);
  out["provides"] = process.provides;
  out["uses"] = process.uses;
  out["handles"] = process.handles;
  out["properties"] = process.properties;
  return out;
}

ordered_json map_to_json(const ProcessMap& map) {
  ordered_json out;
  out["name"] = map.name;
  ordered_json processes = ordered_json::array();
  for (const auto& [_, process] : map.processes) processes.push_back(process_to_json(process));
  out["processes"] = std::move(processes);
  ordered_json elements = ordered_json::array();
  for (const auto& [_, element] : map.ea_elements) {
    ordered_json entry;
    entry["id"] = element.id;
    entry["name"] = element.name;
    entry["kind"] = to_string(element.kind);
    if (element.kind == EAKind::Object) entry["object_kind"] = to_string(element.object_kind);
    elements.push_back(std::move(entry));
  }
  out["ea_elements"] = std::move(elements);
  ordered_json categories = ordered_json::array();
  for (const auto& [_, category] : map.categories) {
    ordered_json entry;
    entry["id"] = category.id;
    entry["name"] = category.name;
    entry["parent"] = category.parent ? ordered_json(*category.parent) : ordered_json(nullptr);
    categories.push_back(std::move(entry));
  }
  out["categories"] = std::move(categories);
  ordered_json phases = ordered_json::array();
  for (const auto& [_, phase] : map.phases) {
    ordered_json entry;
    entry["id"] = phase.id;
    entry["name"] = phase.name;
    entry["ordinal"] = phase.ordinal ? ordered_json(*phase.ordinal) : ordered_json(nullptr);
    phases.push_back(std::move(entry));
  }
  out["phases"] = std::move(phases);
  ordered_json relations = ordered_json::array();
  for (const Relation& relation : map.relations) {
    ordered_json entry;
    entry["kind"] = to_string(relation.kind);
    entry["from"] = relation.from;
    entry["to"] = relation.to;
    relations.push_back(std::move(entry));
  }
  out["relations"] = std::move(relations);
  ordered_json groups = ordered_json::array();
  for (const Group& group : map.groups) {
    ordered_json entry;
    entry["name"] = group.name;
    ordered_json criterion;
    criterion["kind"] = to_string(group.criterion.kind);
    switch (group.criterion.kind) {
      case CriterionKind::Property:
        criterion["key"] = group.criterion.key;
        criterion["value"] = group.criterion.value;
        break;
      case CriterionKind::ExplicitList:
        break;
      default:
        criterion["id"] = group.criterion.id;
        break;
    }
    entry["criterion"] = std::move(criterion);
    if (group.criterion.kind == CriterionKind::ExplicitList) {
      entry["members"] = group.explicit_members ? ordered_json(*group.explicit_members)
                                                : ordered_json(std::set<std::string>{});
    }
    groups.push_back(std::move(entry));
  }
  out["groups"] = std::move(groups);
  return out;
}

ordered_json span_to_json(const std::optional<SourceSpan>& span) {
  if (!span) return nullptr;
  ordered_json out;
  out["file"] = span->file;
  out["line"] = span->line;
  out["column"] = span->column;
  out["length"] = span->length;
  return out;
}

ordered_json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics) {
  ordered_json out = ordered_json::array();
  for (const Diagnostic& diagnostic : diagnostics) {
    ordered_json entry;
    entry["code"] = diagnostic.code;
    entry["severity"] = to_string(diagnostic.severity);
    entry["message"] = diagnostic.message;
    entry["subjects"] = diagnostic.subjects;
    entry["span"] = span_to_json(diagnostic.span);
    out.push_back(std::move(entry));
  }
  return out;
}

ordered_json validation_to_json(const ValidationReport& report) {
  ordered_json out;
  out["verdict"] = to_string(report.verdict);
  out["rules_run"] = report.rules_run;
  out["diagnostics"] = diagnostics_to_json(report.diagnostics);
  return out;
}

ordered_json analysis_to_json(const AnalysisReport& report) {
  ordered_json out;
  ordered_json classification;
  for (const auto& [id, trigger_class] : report.classification) {
    classification[id] = to_string(trigger_class);
  }
  out["classification"] = std::move(classification);
  ordered_json chains = ordered_json::array();
  for (const ProcessChain& chain : report.chains) {
    ordered_json entry;
    entry["id"] = chain.id;
    entry["members"] = chain.members;
    ordered_json edges = ordered_json::array();
    for (const ChainEdge& edge : chain.edges) {
      ordered_json edge_entry;
      edge_entry["from"] = edge.from;
      edge_entry["to"] = edge.to;
      edge_entry["kind"] = to_string(edge.kind);
      edges.push_back(std::move(edge_entry));
    }
    entry["edges"] = std::move(edges);
    chains.push_back(std::move(entry));
  }
  out["chains"] = std::move(chains);
  ordered_json families = ordered_json::array();
  for (const ProcessFamily& family : report.families) {
    ordered_json entry;
    entry["standard"] = family.standard;
    entry["variants"] = family.variants;
    families.push_back(std::move(entry));
  }
  out["families"] = std::move(families);
  ordered_json groups = ordered_json::array();
  for (const GroupResult& group : report.groups) {
    ordered_json entry;
    entry["name"] = group.name;
    entry["members"] = group.members;
    groups.push_back(std::move(entry));
  }
  out["groups"] = std::move(groups);
  out["orphans"] = report.orphans;
  return out;
}

ordered_json trace_to_json(const Trace& trace) {
  ordered_json out;
  out["steps_used"] = trace.steps_used;
  ordered_json events = ordered_json::array();
  for (const TraceEvent& event : trace.events) {
    ordered_json entry;
    entry["step"] = event.step;
    entry["kind"] = to_string(event.kind);
    entry["process"] = event.process;
    entry["instance"] = event.instance;
    entry["peer"] = event.peer ? ordered_json(*event.peer) : ordered_json(nullptr);
    events.push_back(std::move(entry));
  }
  out["events"] = std::move(events);
  ordered_json violations = ordered_json::array();
  for (const Violation& violation : trace.violations) {
    ordered_json entry;
    entry["kind"] = to_string(violation.kind);
    entry["detail"] = violation.detail;
    entry["step"] = violation.step;
    violations.push_back(std::move(entry));
  }
  out["violations"] = std::move(violations);
  return out;
}

// ---- loading ---------------------------------------------------------------

struct LoadError {
  std::string message;
};

[[noreturn]] void bad(const std::string& path, const std::string& reason) {
  throw LoadError{path + ": " + reason};
}

const ordered_json& member(const ordered_json& object, const std::string& key,
                           const std::string& path) {
  if (!object.is_object()) bad(path, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) bad(path, "missing key '" + key + "'");
  return *it;
}

void check_keys(const ordered_json& object, const std::vector<std::string>& allowed,
                const std::string& path) {
  if (!object.is_object()) bad(path, "expected an object");
  for (const auto& [key, _] : object.items()) {
    bool known = false;
    for (const std::string& candidate : allowed) known |= candidate == key;
    if (!known) bad(path, "unknown key '" + key + "'");
  }
}

std::string get_string(const ordered_json& object, const std::string& key,
                       const std::string& path) {
  const ordered_json& value = member(object, key, path);
  if (!value.is_string()) bad(path, "key '" + key + "' must be a string");
  return value.get<std::string>();
}

std::set<std::string> get_string_set(const ordered_json& object, const std::string& key,
                                     const std::string& path) {
  const ordered_json& value = member(object, key, path);
  if (!value.is_array()) bad(path, "key '" + key + "' must be an array");
  std::set<std::string> out;
  for (const ordered_json& item : value) {
    if (!item.is_string()) bad(path, "key '" + key + "' must contain strings");
    out.insert(item.get<std::string>());
  }
  return out;
}

CustomerRef load_customer_ref(const ordered_json& object, const std::string& path) {
  check_keys(object, {"kind", "ref"}, path);
  CustomerRef ref;
  std::string kind = get_string(object, "kind", path);
  auto parsed = customer_kind_from_string(kind);
  if (!parsed) bad(path, "unknown customer kind '" + kind + "'");
  ref.kind = *parsed;
  ref.id = get_string(object, "ref", path);
  return ref;
}

Process load_process(const ordered_json& object, const std::string& path) {
  check_keys(object,
             {"id", "name", "categories", "phases", "owners", "inputs", "outputs", "provides",
              "uses", "handles", "properties"},
             path);
  Process process;
  process.id = get_string(object, "id", path);
  process.name = get_string(object, "name", path);
  process.categories = get_string_set(object, "categories", path);
  process.phases = get_string_set(object, "phases", path);
  process.owners = get_string_set(object, "owners", path);
  const ordered_json& inputs = member(object, "inputs", path);
  if (!inputs.is_array()) bad(path, "key 'inputs' must be an array");
  for (const ordered_json& entry : inputs) {
    check_keys(entry, {"label", "source"}, path + "/inputs");
    InputSpec input;
    input.label = get_string(entry, "label", path + "/inputs");
    input.source = load_customer_ref(member(entry, "source", path + "/inputs"), path + "/inputs");
    process.inputs.push_back(std::move(input));
  }
  const ordered_json& outputs = member(object, "outputs", path);
  if (!outputs.is_array()) bad(path, "key 'outputs' must be an array");
  for (const ordered_json& entry : outputs) {
    check_keys(entry, {"label", "kind", "destination"}, path + "/outputs");
    OutputSpec output;
    output.label = get_string(entry, "label", path + "/outputs");
    std::string kind = get_string(entry, "kind", path + "/outputs");
    auto parsed = output_kind_from_string(kind);
    if (!parsed) bad(path + "/outputs", "unknown output kind '" + kind + "'");
    output.kind = *parsed;
    output.destination =
        load_customer_ref(member(entry, "destination", path + "/outputs"), path + "/outputs");
    process.outputs.push_back(std::move(output));
  }
  process.provides = get_string_set(object, "provides", path);
  process.uses = get_string_set(object, "uses", path);
  process.handles = get_string_set(object, "handles", path);
  const ordered_json& properties = member(object, "properties", path);
  if (!properties.is_object()) bad(path, "key 'properties' must be an object");
  for (const auto& [key, value] : properties.items()) {
    if (!value.is_string()) bad(path, "property '" + key + "' must be a string");
    process.properties[key] = value.get<std::string>();
  }
  return process;
}

MapDraft load_draft(const ordered_json& object) {
  check_keys(object,
             {"name", "processes", "ea_elements", "categories", "phases", "relations", "groups"},
             "map");
  MapDraft draft;
  draft.name = get_string(object, "name", "map");

  const ordered_json& processes = member(object, "processes", "map");
  if (!processes.is_array()) bad("map", "key 'processes' must be an array");
  for (const ordered_json& entry : processes) {
    draft.processes.push_back({load_process(entry, "map/processes"), std::nullopt});
  }

  const ordered_json& elements = member(object, "ea_elements", "map");
  if (!elements.is_array()) bad("map", "key 'ea_elements' must be an array");
  for (const ordered_json& entry : elements) {
    const std::string path = "map/ea_elements";
    EAElement element;
    std::string kind = get_string(entry, "kind", path);
    auto parsed = ea_kind_from_string(kind);
    if (!parsed) bad(path, "unknown element kind '" + kind + "'");
    element.kind = *parsed;
    if (element.kind == EAKind::Object) {
      check_keys(entry, {"id", "name", "kind", "object_kind"}, path);
      std::string object_kind = get_string(entry, "object_kind", path);
      auto parsed_object_kind = object_kind_from_string(object_kind);
      if (!parsed_object_kind) bad(path, "unknown object kind '" + object_kind + "'");
      element.object_kind = *parsed_object_kind;
    } else {
      check_keys(entry, {"id", "name", "kind"}, path);
    }
    element.id = get_string(entry, "id", path);
    element.name = get_string(entry, "name", path);
    draft.ea_elements.push_back({std::move(element), std::nullopt});
  }

  const ordered_json& categories = member(object, "categories", "map");
  if (!categories.is_array()) bad("map", "key 'categories' must be an array");
  for (const ordered_json& entry : categories) {
    const std::string path = "map/categories";
    check_keys(entry, {"id", "name", "parent"}, path);
    Category category;
    category.id = get_string(entry, "id", path);
    category.name = get_string(entry, "name", path);
    const ordered_json& parent = member(entry, "parent", path);
    if (parent.is_string()) {
      category.parent = parent.get<std::string>();
    } else if (!parent.is_null()) {
      bad(path, "key 'parent' must be a string or null");
    }
    draft.categories.push_back({std::move(category), std::nullopt});
  }

  const ordered_json& phases = member(object, "phases", "map");
  if (!phases.is_array()) bad("map", "key 'phases' must be an array");
  for (const ordered_json& entry : phases) {
    const std::string path = "map/phases";
    check_keys(entry, {"id", "name", "ordinal"}, path);
    Phase phase;
    phase.id = get_string(entry, "id", path);
    phase.name = get_string(entry, "name", path);
    const ordered_json& ordinal = member(entry, "ordinal", path);
    if (ordinal.is_number_unsigned()) {
      auto value = ordinal.get<std::uint64_t>();
      if (value > std::numeric_limits<std::uint32_t>::max()) bad(path, "ordinal out of range");
      phase.ordinal = static_cast<std::uint32_t>(value);
    } else if (!ordinal.is_null()) {
      bad(path, "key 'ordinal' must be a non-negative integer or null");
    }
    draft.phases.push_back({std::move(phase), std::nullopt});
  }

  const ordered_json& relations = member(object, "relations", "map");
  if (!relations.is_array()) bad("map", "key 'relations' must be an array");
  for (const ordered_json& entry : relations) {
    const std::string path = "map/relations";
    check_keys(entry, {"kind", "from", "to"}, path);
    Relation relation;
    std::string kind = get_string(entry, "kind", path);
    auto parsed = relation_kind_from_string(kind);
    if (!parsed) bad(path, "unknown relation kind '" + kind + "'");
    relation.kind = *parsed;
    relation.from = get_string(entry, "from", path);
    relation.to = get_string(entry, "to", path);
    draft.relations.push_back({std::move(relation), std::nullopt});
  }

  const ordered_json& groups = member(object, "groups", "map");
  if (!groups.is_array()) bad("map", "key 'groups' must be an array");
  for (const ordered_json& entry : groups) {
    const std::string path = "map/groups";
    Group group;
    group.name = get_string(entry, "name", path);
    const ordered_json& criterion = member(entry, "criterion", path);
    std::string kind = get_string(criterion, "kind", path + "/criterion");
    auto parsed = criterion_kind_from_string(kind);
    if (!parsed) bad(path + "/criterion", "unknown criterion kind '" + kind + "'");
    group.criterion.kind = *parsed;
    switch (group.criterion.kind) {
      case CriterionKind::Property:
        check_keys(criterion, {"kind", "key", "value"}, path + "/criterion");
        group.criterion.key = get_string(criterion, "key", path + "/criterion");
        group.criterion.value = get_string(criterion, "value", path + "/criterion");
        check_keys(entry, {"name", "criterion"}, path);
        break;
      case CriterionKind::ExplicitList:
        check_keys(criterion, {"kind"}, path + "/criterion");
        check_keys(entry, {"name", "criterion", "members"}, path);
        group.explicit_members = get_string_set(entry, "members", path);
        break;
      default:
        check_keys(criterion, {"kind", "id"}, path + "/criterion");
        group.criterion.id = get_string(criterion, "id", path + "/criterion");
        check_keys(entry, {"name", "criterion"}, path);
        break;
    }
    draft.groups.push_back({std::move(group), std::nullopt});
  }
  return draft;
}

}  // namespace

std::string export_interchange(const ProcessMap& map, const InterchangeSections& sections) {
  ordered_json document;
  document["schema_version"] = map.schema_version;
  document["map"] = map_to_json(map);
  if (sections.validation) document["validation"] = validation_to_json(*sections.validation);
  if (sections.analysis) document["analysis"] = analysis_to_json(*sections.analysis);
  if (sections.trace) document["trace"] = trace_to_json(*sections.trace);
  return document.dump(2) + "\n";
}

LoadResult load_interchange(std::string_view bytes) {
  LoadResult result;
  ordered_json document = ordered_json::parse(bytes, nullptr, false);
  if (document.is_discarded()) {
    result.diagnostics.push_back(
        {"E-FORMAT", Severity::Error, "malformed interchange document: not valid JSON", {}, {}});
    return result;
  }
  try {
    check_keys(document, {"schema_version", "map", "validation", "analysis", "trace"}, "document");
    std::string version = get_string(document, "schema_version", "document");
    if (version != kInterchangeSchemaVersion) {
      result.diagnostics.push_back({"E-SCHEMA", Severity::Error,
                                    "unsupported schema version '" + version + "' (expected '" +
                                        std::string(kInterchangeSchemaVersion) + "')",
                                    {},
                                    {}});
      return result;
    }
    MapDraft draft = load_draft(member(document, "map", "document"));
    AssemblyResult assembled = assemble(draft);
    if (!assembled.ok()) {
      result.diagnostics = std::move(assembled.diagnostics);
      return result;
    }
    result.map = std::move(assembled.map);
    return result;
  } catch (const LoadError& error) {
    result.diagnostics.push_back({"E-FORMAT", Severity::Error,
                                  "malformed interchange document: " + error.message, {}, {}});
    return result;
  }
}

}  // namespace promap
