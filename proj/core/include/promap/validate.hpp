#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "promap/diagnostics.hpp"
#include "promap/model.hpp"

namespace promap {

struct Rule {
  std::string code;
  Severity severity = Severity::Warning;
  std::string description;
};

/// The full rule catalog, ordered by code. Codes are stable; E-* rules
/// are structural errors, W-* rules are consistency findings.
const std::vector<Rule>& rule_catalog();

const Rule* find_rule(std::string_view code);

enum class RuleOverride { Off, Info, Warning };

/// Per-rule severity overrides. Only Warning/Info rules may be
/// overridden; Error rules are fixed.
struct RuleConfig {
  std::map<std::string, RuleOverride> overrides;
};

/// Parses config text of the form "CODE = off|info|warning", one entry
/// per line, '#' comments allowed. Unknown codes and attempts to
/// override E-* rules are errors.
struct RuleConfigResult {
  std::optional<RuleConfig> config;
  std::vector<std::string> errors;

  bool ok() const { return config.has_value(); }
};

RuleConfigResult parse_rule_config(std::string_view text);

enum class Verdict { Pass, PassWithWarnings, Fail };

std::string_view to_string(Verdict verdict);

struct ValidationReport {
  std::vector<Diagnostic> diagnostics;
  std::vector<std::string> rules_run;
  Verdict verdict = Verdict::Pass;
};

/// Runs every enabled rule over an assembled map. Diagnostics are
/// ordered by rule code, then subject identifiers; the verdict is Fail
/// iff an Error diagnostic exists.
ValidationReport validate(const ProcessMap& map, const RuleConfig& config = {});

}  // namespace promap
