#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>

#include "promap/analysis.hpp"
#include "promap/assemble.hpp"
#include "promap/dot.hpp"
#include "promap/format.hpp"
#include "promap/interchange.hpp"
#include "promap/parser.hpp"
#include "promap/simulate.hpp"
#include "promap/validate.hpp"

namespace promap::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kFailure = 2;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream content;
  content << in.rdbuf();
  return content.str();
}

bool write_output(const std::string& path, const std::string& content, std::ostream& out,
                  std::ostream& err) {
  if (path.empty()) {
    out << content;
    return true;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "promap: cannot write '" << path << "'\n";
    return false;
  }
  file << content;
  return true;
}

/// Reads, parses, and assembles one DSL file. Parse problems are
/// failures (exit 2); assembly diagnostics are findings (exit 1).
std::optional<ProcessMap> load_map(const std::string& path, std::ostream& err, int& code) {
  auto text = read_file(path);
  if (!text) {
    err << "promap: cannot read '" << path << "'\n";
    code = kFailure;
    return std::nullopt;
  }
  ParseResult parsed = parse(*text, path);
  if (!parsed.ok()) {
    for (const ParseDiagnostic& diagnostic : parsed.diagnostics) {
      err << render(diagnostic) << '\n';
    }
    code = kFailure;
    return std::nullopt;
  }
  AssemblyResult assembled = assemble(*parsed.draft);
  if (!assembled.ok()) {
    for (const Diagnostic& diagnostic : assembled.diagnostics) {
      err << render(diagnostic) << '\n';
    }
    code = kFindings;
    return std::nullopt;
  }
  return std::move(assembled.map);
}

std::optional<RuleConfig> load_rule_config(const std::string& path, std::ostream& err,
                                           int& code) {
  if (path.empty()) return RuleConfig{};
  auto text = read_file(path);
  if (!text) {
    err << "promap: cannot read rule config '" << path << "'\n";
    code = kFailure;
    return std::nullopt;
  }
  RuleConfigResult parsed = parse_rule_config(*text);
  if (!parsed.ok()) {
    for (const std::string& error : parsed.errors) {
      err << path << ": " << error << '\n';
    }
    code = kFailure;
    return std::nullopt;
  }
  return std::move(*parsed.config);
}

struct CheckOutput {
  std::string out;
  std::string err;
  int code = kOk;
};

CheckOutput check_one(const std::string& path, const RuleConfig& config, bool deny_warnings,
                      bool interchange_format) {
  CheckOutput result;
  std::ostringstream out;
  std::ostringstream err;
  auto map = load_map(path, err, result.code);
  if (map) {
    ValidationReport report = validate(*map, config);
    for (const Diagnostic& diagnostic : report.diagnostics) {
      err << render(diagnostic) << '\n';
    }
    if (interchange_format) {
      InterchangeSections sections;
      sections.validation = report;
      out << export_interchange(*map, sections);
    } else {
      std::size_t errors = 0;
      std::size_t warnings = 0;
      for (const Diagnostic& diagnostic : report.diagnostics) {
        errors += diagnostic.severity == Severity::Error ? 1 : 0;
        warnings += diagnostic.severity == Severity::Warning ? 1 : 0;
      }
      out << path << ": ";
      switch (report.verdict) {
        case Verdict::Pass: out << "pass"; break;
        case Verdict::PassWithWarnings:
          out << "pass with warnings (" << warnings << ")";
          break;
        case Verdict::Fail: out << "fail (" << errors << " errors)"; break;
      }
      out << '\n';
    }
    if (report.verdict == Verdict::Fail) {
      result.code = kFindings;
    } else if (deny_warnings && report.verdict == Verdict::PassWithWarnings) {
      result.code = kFindings;
    }
  }
  result.out = out.str();
  result.err = err.str();
  return result;
}

void print_analysis(std::ostream& out, const ProcessMap& map, const AnalysisReport& report,
                    const std::string& which) {
  bool all = which == "all";
  if (all || which == "classification") {
    out << "classification:\n";
    for (const auto& [id, trigger_class] : report.classification) {
      out << "  " << id << ": " << to_string(trigger_class) << '\n';
    }
  }
  if (all || which == "chains") {
    out << "chains:\n";
    for (const ProcessChain& chain : report.chains) {
      out << "  " << chain.id << ":";
      for (const std::string& member : chain.members) out << ' ' << member;
      out << '\n';
      for (const ChainEdge& edge : chain.edges) {
        out << "    " << edge.from << (edge.kind == RelationKind::Trigger ? " -> " : " ~> ")
            << edge.to << '\n';
      }
    }
  }
  if (all || which == "families") {
    out << "families:\n";
    for (const ProcessFamily& family : report.families) {
      out << "  " << family.standard << ": variants";
      for (const std::string& variant : family.variants) out << ' ' << variant;
      out << '\n';
    }
  }
  if (all || which == "groups") {
    out << "groups:\n";
    for (const GroupResult& group : report.groups) {
      out << "  \"" << group.name << "\":";
      for (const std::string& member : group.members) out << ' ' << member;
      out << '\n';
    }
  }
  if (all || which == "orphans") {
    out << "orphans:\n";
    for (const std::string& orphan : report.orphans) out << "  " << orphan << '\n';
  }
  (void)map;
}

int run_check(const std::vector<std::string>& files, const std::string& config_path,
              bool deny_warnings, const std::string& output_format, std::ostream& out,
              std::ostream& err) {
  int code = kOk;
  auto config = load_rule_config(config_path, err, code);
  if (!config) return code;
  bool interchange_format = output_format == "interchange";

  // Files are checked concurrently; output blocks stay in input order.
  std::vector<std::future<CheckOutput>> workers;
  workers.reserve(files.size());
  for (const std::string& file : files) {
    workers.push_back(std::async(std::launch::async, check_one, file, *config, deny_warnings,
                                 interchange_format));
  }
  for (auto& worker : workers) {
    CheckOutput result = worker.get();
    out << result.out;
    err << result.err;
    code = std::max(code, result.code);
  }
  return code;
}

int run_analyze(const std::string& file, const std::string& which, std::ostream& out,
                std::ostream& err) {
  int code = kOk;
  auto map = load_map(file, err, code);
  if (!map) return code;
  ValidationReport report = validate(*map);
  if (report.verdict == Verdict::Fail) {
    for (const Diagnostic& diagnostic : report.diagnostics) {
      if (diagnostic.severity == Severity::Error) err << render(diagnostic) << '\n';
    }
    return kFindings;
  }
  print_analysis(out, *map, analyze(*map), which);
  return kOk;
}

int run_simulate(const std::string& file, const std::string& scenario_path, std::uint64_t budget,
                 std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto map = load_map(file, err, code);
  if (!map) return code;
  ValidationReport report = validate(*map);
  if (report.verdict == Verdict::Fail) {
    for (const Diagnostic& diagnostic : report.diagnostics) {
      if (diagnostic.severity == Severity::Error) err << render(diagnostic) << '\n';
    }
    return kFindings;
  }
  auto scenario_text = read_file(scenario_path);
  if (!scenario_text) {
    err << "promap: cannot read scenario '" << scenario_path << "'\n";
    return kFailure;
  }
  ScenarioParseResult scenario = parse_scenario(*scenario_text, scenario_path);
  if (!scenario.ok()) {
    for (const Diagnostic& diagnostic : scenario.diagnostics) {
      err << render(diagnostic) << '\n';
    }
    return kFailure;
  }
  for (const Stimulus& stimulus : scenario.scenario->stimuli) {
    if (!map->processes.contains(stimulus.process)) {
      err << scenario_path << ": unknown process '" << stimulus.process << "'\n";
      return kFailure;
    }
  }
  Trace trace = simulate(*map, *scenario.scenario, budget);
  for (const TraceEvent& event : trace.events) {
    out << event.step << ' ' << to_string(event.kind) << ' ' << event.process << " #"
        << event.instance;
    if (event.peer) out << " (by #" << *event.peer << ')';
    out << '\n';
  }
  out << "steps used: " << trace.steps_used << '\n';
  for (const Violation& violation : trace.violations) {
    err << "violation at step " << violation.step << ": " << violation.detail << '\n';
  }
  return trace.violations.empty() ? kOk : kFindings;
}

int run_export(const std::string& file, const std::string& output_format,
               const std::string& color_by, const std::string& output_path, std::ostream& out,
               std::ostream& err) {
  int code = kOk;
  auto map = load_map(file, err, code);
  if (!map) return code;
  std::string artifact;
  if (output_format == "interchange") {
    artifact = export_interchange(*map);
  } else {
    DotOptions options;
    if (color_by == "category") options.color_by = ColorBy::Category;
    if (color_by == "phase") options.color_by = ColorBy::Phase;
    if (color_by == "trigger-class") options.color_by = ColorBy::TriggerClass;
    artifact = export_dot(*map, options);
  }
  return write_output(output_path, artifact, out, err) ? kOk : kFailure;
}

int run_fmt(const std::string& file, const std::string& output_path, std::ostream& out,
            std::ostream& err) {
  int code = kOk;
  auto map = load_map(file, err, code);
  if (!map) return code;
  return write_output(output_path, format(*map), out, err) ? kOk : kFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"promap - business process map tooling"};
  app.name("promap");
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "Validate process map files");
  std::vector<std::string> check_files;
  std::string check_config;
  bool deny_warnings = false;
  std::string check_format = "text";
  check->add_option("files", check_files, "Input .promap files")->required();
  check->add_option("--config", check_config, "Rule severity config file")
      ->envname("PROMAP_CONFIG");
  check->add_flag("--deny-warnings", deny_warnings, "Exit with status 1 on warnings");
  check->add_option("--format", check_format, "Report format")
      ->check(CLI::IsMember({"text", "interchange"}));

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Derive composite structures");
  std::string analyze_file;
  std::string analyze_report = "all";
  analyze_cmd->add_option("file", analyze_file, "Input .promap file")->required();
  analyze_cmd->add_option("--report", analyze_report, "Which analysis to print")
      ->check(CLI::IsMember({"chains", "families", "groups", "classification", "orphans", "all"}));

  // simulate
  auto* simulate_cmd = app.add_subcommand("simulate", "Run the trigger/flow simulator");
  std::string simulate_file;
  std::string scenario_path;
  std::uint64_t max_steps = kDefaultStepBudget;
  simulate_cmd->add_option("file", simulate_file, "Input .promap file")->required();
  simulate_cmd->add_option("--scenario", scenario_path, "Scenario file")->required();
  simulate_cmd->add_option("--max-steps", max_steps, "Step budget")
      ->check(CLI::PositiveNumber);

  // export
  auto* export_cmd = app.add_subcommand("export", "Export a map to another format");
  std::string export_file;
  std::string export_format;
  std::string color_by;
  std::string export_output;
  export_cmd->add_option("file", export_file, "Input .promap file")->required();
  export_cmd->add_option("--format", export_format, "Output format")
      ->required()
      ->check(CLI::IsMember({"interchange", "dot"}));
  export_cmd->add_option("--color-by", color_by, "Node coloring for dot output")
      ->check(CLI::IsMember({"category", "phase", "trigger-class"}));
  export_cmd->add_option("-o,--output", export_output, "Output path (default stdout)");

  // fmt
  auto* fmt_cmd = app.add_subcommand("fmt", "Reprint a map in canonical form");
  std::string fmt_file;
  std::string fmt_output;
  fmt_cmd->add_option("file", fmt_file, "Input .promap file")->required();
  fmt_cmd->add_option("-o,--output", fmt_output, "Output path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& error) {
    err << "promap: " << error.what() << '\n';
    return kFailure;
  }

  if (app.got_subcommand(check)) {
    return run_check(check_files, check_config, deny_warnings, check_format, out, err);
  }
  if (app.got_subcommand(analyze_cmd)) {
    return run_analyze(analyze_file, analyze_report, out, err);
  }
  if (app.got_subcommand(simulate_cmd)) {
    return run_simulate(simulate_file, scenario_path, max_steps, out, err);
  }
  if (app.got_subcommand(export_cmd)) {
    return run_export(export_file, export_format, color_by, export_output, out, err);
  }
  if (app.got_subcommand(fmt_cmd)) {
    return run_fmt(fmt_file, fmt_output, out, err);
  }
  err << "promap: no subcommand given\n";
  return kFailure;
}

}  // namespace promap::cli
