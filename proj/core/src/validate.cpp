#include "promap/validate.hpp"

#include <algorithm>
#include <sstream>

#include "graph.hpp"
#include "promap/analysis.hpp"

namespace promap {

const std::vector<Rule>& rule_catalog() {
  static const std::vector<Rule> catalog = {
      {"E-CAT-CYCLE", Severity::Error, "category parent chains must be acyclic"},
      {"E-DEC-CYCLE", Severity::Error, "the decomposition digraph must be acyclic"},
      {"E-SPEC-CYCLE", Severity::Error, "the specialization digraph must be acyclic"},
      {"W-CUST-EXT", Severity::Warning,
       "an externally triggered process should deliver output to an external customer"},
      {"W-CUST-INT", Severity::Warning,
       "an internally triggered process should not deliver output to an external customer"},
      {"W-EMPTY-GROUP", Severity::Info, "a group criterion should match at least one process"},
      {"W-FLOW-COACT", Severity::Warning,
       "a flow target without any trigger source can never be active to receive"},
      {"W-HYBRID-TRIG", Severity::Info,
       "a process has both external and internal trigger sources"},
      {"W-ORPHAN-INT", Severity::Info,
       "an internally triggered process should be contained, transitively, in an externally "
       "triggered process"},
      {"W-UNTRIGGERED", Severity::Warning, "a process has no input and no incoming trigger"},
  };
  return catalog;
}

const Rule* find_rule(std::string_view code) {
  for (const Rule& rule : rule_catalog()) {
    if (rule.code == code) return &rule;
  }
  return nullptr;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "pass";
    case Verdict::PassWithWarnings: return "pass_with_warnings";
    case Verdict::Fail: return "fail";
  }
  return "pass";
}

RuleConfigResult parse_rule_config(std::string_view text) {
  RuleConfigResult result;
  RuleConfig config;
  std::size_t line_no = 0;
  std::size_t start = 0;
  auto record_error = [&](const std::string& message) {
    std::ostringstream out;
    out << "line " << line_no << ": " << message;
    result.errors.push_back(out.str());
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
      s.remove_suffix(1);
    }
    return s;
  };
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    std::size_t equals = line.find('=');
    if (equals == std::string_view::npos) {
      record_error("expected '<rule-code> = off|info|warning'");
      continue;
    }
    std::string code(trim(line.substr(0, equals)));
    std::string value(trim(line.substr(equals + 1)));
    const Rule* rule = find_rule(code);
    if (rule == nullptr) {
      record_error("unknown rule code '" + code + "'");
      continue;
    }
    if (rule->severity == Severity::Error) {
      record_error("severity of structural rule '" + code + "' cannot be overridden");
      continue;
    }
    if (value == "off") {
      config.overrides[code] = RuleOverride::Off;
    } else if (value == "info") {
      config.overrides[code] = RuleOverride::Info;
    } else if (value == "warning") {
      config.overrides[code] = RuleOverride::Warning;
    } else {
      record_error("invalid setting '" + value + "' (expected off, info or warning)");
    }
  }
  if (result.errors.empty()) result.config = std::move(config);
  return result;
}

namespace {

class Validator {
 public:
  Validator(const ProcessMap& map, const RuleConfig& config) : map_(map), config_(config) {}

  ValidationReport run() {
    for (const Rule& rule : rule_catalog()) {
      auto severity = effective_severity(rule);
      if (!severity) continue;  // rule switched off
      report_.rules_run.push_back(rule.code);
      run_rule(rule.code, *severity);
    }
    std::stable_sort(report_.diagnostics.begin(), report_.diagnostics.end(),
                     [](const Diagnostic& a, const Diagnostic& b) {
                       if (a.code != b.code) return a.code < b.code;
                       if (a.subjects != b.subjects) return a.subjects < b.subjects;
                       return a.message < b.message;
                     });
    bool any_error = false;
    bool any_warning = false;
    for (const Diagnostic& diagnostic : report_.diagnostics) {
      any_error |= diagnostic.severity == Severity::Error;
      any_warning |= diagnostic.severity == Severity::Warning;
    }
    report_.verdict = any_error  ? Verdict::Fail
                      : any_warning ? Verdict::PassWithWarnings
                                    : Verdict::Pass;
    return std::move(report_);
  }

 private:
  std::optional<Severity> effective_severity(const Rule& rule) const {
    auto it = config_.overrides.find(rule.code);
    if (it == config_.overrides.end() || rule.severity == Severity::Error) return rule.severity;
    switch (it->second) {
      case RuleOverride::Off: return std::nullopt;
      case RuleOverride::Info: return Severity::Info;
      case RuleOverride::Warning: return Severity::Warning;
    }
    return rule.severity;
  }

  void add(std::string code, Severity severity, std::string message,
           std::vector<std::string> subjects, std::optional<SourceSpan> span) {
    report_.diagnostics.push_back(
        {std::move(code), severity, std::move(message), std::move(subjects), std::move(span)});
  }

  std::optional<SourceSpan> process_span(const std::string& id) const {
    auto it = map_.sources.declarations.find("process:" + id);
    if (it == map_.sources.declarations.end()) return std::nullopt;
    return it->second;
  }

  std::optional<SourceSpan> relation_span(std::size_t index) const {
    auto it = map_.sources.relations.find(index);
    if (it == map_.sources.relations.end()) return std::nullopt;
    return it->second;
  }

  const std::map<std::string, TriggerClass>& classes() {
    if (!classes_) classes_ = classify_triggering(map_);
    return *classes_;
  }

  void run_rule(const std::string& code, Severity severity) {
    if (code == "E-CAT-CYCLE") {
      category_cycles(severity);
    } else if (code == "E-DEC-CYCLE") {
      relation_cycles(RelationKind::Decomposition, code, severity, "decomposition cycle");
    } else if (code == "E-SPEC-CYCLE") {
      relation_cycles(RelationKind::Specialization, code, severity, "specialization cycle");
    } else if (code == "W-CUST-EXT") {
      customer_consistency_external(severity);
    } else if (code == "W-CUST-INT") {
      customer_consistency_internal(severity);
    } else if (code == "W-EMPTY-GROUP") {
      empty_groups(severity);
    } else if (code == "W-FLOW-COACT") {
      flow_without_trigger(severity);
    } else if (code == "W-HYBRID-TRIG") {
      hybrid_triggering(severity);
    } else if (code == "W-ORPHAN-INT") {
      orphan_internals(severity);
    } else if (code == "W-UNTRIGGERED") {
      untriggered(severity);
    }
  }

  static std::string member_list(const std::vector<std::string>& members) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i > 0) out << ", ";
      out << members[i];
    }
    out << '}';
    return out.str();
  }

  void relation_cycles(RelationKind kind, const std::string& code, Severity severity,
                       std::string_view what) {
    std::map<std::string, std::vector<std::string>> adjacency;
    for (const auto& [id, _] : map_.processes) adjacency[id];
    for (const Relation& relation : map_.relations) {
      if (relation.kind == kind) adjacency[relation.from].push_back(relation.to);
    }
    for (const auto& component : detail::nontrivial_sccs(adjacency)) {
      std::ostringstream message;
      message << what << ' ' << member_list(component);
      add(code, severity, message.str(), component, process_span(component.front()));
    }
  }

  void category_cycles(Severity severity) {
    std::map<std::string, std::vector<std::string>> adjacency;
    for (const auto& [id, category] : map_.categories) {
      auto& edges = adjacency[id];
      if (category.parent) edges.push_back(*category.parent);
    }
    for (const auto& component : detail::nontrivial_sccs(adjacency)) {
      std::ostringstream message;
      message << "category parent cycle " << member_list(component);
      auto it = map_.sources.declarations.find("category:" + component.front());
      std::optional<SourceSpan> span;
      if (it != map_.sources.declarations.end()) span = it->second;
      add("E-CAT-CYCLE", severity, message.str(), component, span);
    }
  }

  static bool has_external_output(const Process& process) {
    for (const OutputSpec& output : process.outputs) {
      if (output.destination.kind == CustomerKind::ExternalCustomer) return true;
    }
    return false;
  }

  void customer_consistency_external(Severity severity) {
    for (const auto& [id, process] : map_.processes) {
      if (classes().at(id) != TriggerClass::External) continue;
      if (has_external_output(process)) continue;
      std::ostringstream message;
      message << "externally triggered process '" << id
              << "' delivers no output to an external customer";
      add("W-CUST-EXT", severity, message.str(), {id}, process_span(id));
    }
  }

  void customer_consistency_internal(Severity severity) {
    for (const auto& [id, process] : map_.processes) {
      if (classes().at(id) != TriggerClass::Internal) continue;
      if (!has_external_output(process)) continue;
      std::ostringstream message;
      message << "internally triggered process '" << id
              << "' delivers output to an external customer";
      add("W-CUST-INT", severity, message.str(), {id}, process_span(id));
    }
  }

  void empty_groups(Severity severity) {
    for (const GroupResult& result : evaluate_groups(map_)) {
      if (!result.members.empty()) continue;
      std::ostringstream message;
      message << "group '" << result.name << "' matches no process";
      std::optional<SourceSpan> span;
      auto it = map_.sources.groups.find(result.name);
      if (it != map_.sources.groups.end()) span = it->second;
      add("W-EMPTY-GROUP", severity, message.str(), {result.name}, span);
    }
  }

  void flow_without_trigger(Severity severity) {
    for (std::size_t i = 0; i < map_.relations.size(); ++i) {
      const Relation& relation = map_.relations[i];
      if (relation.kind != RelationKind::Flow) continue;
      if (classes().at(relation.to) != TriggerClass::Untriggered) continue;
      std::ostringstream message;
      message << "flow from '" << relation.from << "' to '" << relation.to << "' can never be "
              << "received: '" << relation.to << "' has no trigger source";
      add("W-FLOW-COACT", severity, message.str(), {relation.from, relation.to},
          relation_span(i));
    }
  }

  void hybrid_triggering(Severity severity) {
    for (const auto& [id, trigger_class] : classes()) {
      if (trigger_class != TriggerClass::Hybrid) continue;
      std::ostringstream message;
      message << "process '" << id << "' has both external and internal trigger sources";
      add("W-HYBRID-TRIG", severity, message.str(), {id}, process_span(id));
    }
  }

  void orphan_internals(Severity severity) {
    for (const std::string& id : orphan_internal_processes(map_)) {
      std::ostringstream message;
      message << "internally triggered process '" << id
              << "' is not contained in any externally triggered process";
      add("W-ORPHAN-INT", severity, message.str(), {id}, process_span(id));
    }
  }

  void untriggered(Severity severity) {
    for (const auto& [id, trigger_class] : classes()) {
      if (trigger_class != TriggerClass::Untriggered) continue;
      std::ostringstream message;
      message << "process '" << id << "' has no input and no incoming trigger";
      add("W-UNTRIGGERED", severity, message.str(), {id}, process_span(id));
    }
  }

  const ProcessMap& map_;
  const RuleConfig& config_;
  ValidationReport report_;
  std::optional<std::map<std::string, TriggerClass>> classes_;
};

}  // namespace

ValidationReport validate(const ProcessMap& map, const RuleConfig& config) {
  return Validator(map, config).run();
}

}  // namespace promap
