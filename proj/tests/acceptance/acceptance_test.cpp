// Acceptance suite: one pass/fail line per criterion. Run through ctest
// or directly; exits nonzero when any criterion fails.

#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "promap/analysis.hpp"
#include "promap/assemble.hpp"
#include "promap/format.hpp"
#include "promap/interchange.hpp"
#include "promap/parser.hpp"
#include "promap/simulate.hpp"
#include "promap/validate.hpp"
#include "test_util.hpp"

using namespace promap;
using namespace promap::testing;

namespace {

int checks_failed = 0;

#define EXPECT(cond, ...)                        \
  do {                                           \
    if (!(cond)) {                               \
      std::fprintf(stderr, "  expectation failed: " __VA_ARGS__); \
      std::fprintf(stderr, " [%s:%d]\n", __FILE__, __LINE__);     \
      ++checks_failed;                           \
      return false;                              \
    }                                            \
  } while (0)

const std::vector<std::string> kValidFixtures = {
    "p2p.promap",       "sales_order.promap", "shared_custverify.promap",
    "hr_variants.promap", "porter.promap",    "riva.promap",
    "pmbok.promap",     "teaching.promap",    "acme.promap",
};

int run_cli_quiet(std::vector<std::string> args, std::string* err_text = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  int code = cli::run_cli(args, out, err);
  if (err_text != nullptr) *err_text = err.str();
  return code;
}

// 1. The grammar offers no production for process interiors.
bool atomicity() {
  Rng rng(1001);
  int programs = 0;
  while (programs < 10000) {
    std::string program = random_program(rng);
    ++programs;
    ParseResult valid = parse(program, "generated");
    EXPECT(valid.ok(), "a generated grammar program failed to parse");
    std::string mutated = inject_interior_statement(rng, program);
    if (mutated.empty()) continue;
    ++programs;
    ParseResult broken = parse(mutated, "mutated");
    EXPECT(!broken.ok(), "an interior statement slipped through the grammar");
  }
  ParseResult fixture = parse(read_fixture("task_interior.promap"), "task_interior.promap");
  EXPECT(!fixture.ok(), "process P { task T } must be a syntax error");
  EXPECT(!fixture.diagnostics.empty(), "interior rejection must carry a diagnostic");
  return true;
}

// 2. Every named fixture assembles and validates without errors.
bool fixture_corpus_validates() {
  for (const std::string& fixture : kValidFixtures) {
    ParseResult parsed = parse(read_fixture(fixture), fixture);
    EXPECT(parsed.ok(), "fixture %s failed to parse", fixture.c_str());
    AssemblyResult assembled = assemble(*parsed.draft);
    EXPECT(assembled.ok(), "fixture %s failed to assemble", fixture.c_str());
    ValidationReport report = validate(*assembled.map);
    for (const Diagnostic& diagnostic : report.diagnostics) {
      EXPECT(diagnostic.severity != Severity::Error, "fixture %s raised %s",
             fixture.c_str(), diagnostic.code.c_str());
    }
    EXPECT(report.verdict != Verdict::Fail, "fixture %s failed validation", fixture.c_str());
  }
  return true;
}

// 3. Cycle fixtures produce exactly their designated error, exit status 1.
bool structural_rules() {
  const std::pair<std::string, std::string> cases[] = {
      {"dec_cycle.promap", "E-DEC-CYCLE"},
      {"spec_cycle.promap", "E-SPEC-CYCLE"},
      {"cat_cycle.promap", "E-CAT-CYCLE"},
  };
  for (const auto& [fixture, code] : cases) {
    ProcessMap map = load_fixture(fixture);
    ValidationReport report = validate(map);
    std::set<std::string> error_codes;
    for (const Diagnostic& diagnostic : report.diagnostics) {
      if (diagnostic.severity == Severity::Error) error_codes.insert(diagnostic.code);
    }
    EXPECT(error_codes == std::set<std::string>{code}, "%s must raise exactly %s",
           fixture.c_str(), code.c_str());
    std::string err_text;
    int exit_code = run_cli_quiet({"check", fixture_path(fixture)}, &err_text);
    EXPECT(exit_code == 1, "check %s must exit 1, got %d", fixture.c_str(), exit_code);
    EXPECT(err_text.find(code) != std::string::npos, "check %s must print %s",
           fixture.c_str(), code.c_str());
  }
  return true;
}

// 4. Triggering classification and the customer-consistency rules.
bool classification() {
  ProcessMap map = load_fixture("classification.promap");
  auto classes = classify_triggering(map);
  const std::map<std::string, TriggerClass> expected = {
      {"OrderIntake", TriggerClass::External}, {"Quoting", TriggerClass::External},
      {"Fulfilment", TriggerClass::Internal},  {"Invoicing", TriggerClass::Internal},
      {"Reporting", TriggerClass::Internal},   {"Maintenance", TriggerClass::Untriggered},
  };
  EXPECT(classes.size() == expected.size(), "classification must cover all six processes");
  for (const auto& [id, trigger_class] : expected) {
    EXPECT(classes.at(id) == trigger_class, "process %s classified as %s, expected %s",
           id.c_str(), std::string(to_string(classes.at(id))).c_str(),
           std::string(to_string(trigger_class)).c_str());
  }
  ValidationReport report = validate(map);
  std::set<std::string> cust_ext;
  std::set<std::string> cust_int;
  for (const Diagnostic& diagnostic : report.diagnostics) {
    if (diagnostic.code == "W-CUST-EXT") cust_ext.insert(diagnostic.subjects.at(0));
    if (diagnostic.code == "W-CUST-INT") cust_int.insert(diagnostic.subjects.at(0));
  }
  EXPECT(cust_ext == std::set<std::string>{"Quoting"},
         "W-CUST-EXT must fire on Quoting and nothing else");
  EXPECT(cust_int == std::set<std::string>{"Invoicing"},
         "W-CUST-INT must fire on Invoicing and nothing else");
  return true;
}

// 5. Derived composites match their independent oracles.
bool composites() {
  Rng rng(1005);
  for (int i = 0; i < 500; ++i) {
    ProcessMap map = random_ordering_map(rng, 200);
    auto chains = derive_chains(map);
    auto oracle = ordering_components_oracle(map);
    EXPECT(chains.size() == oracle.size(), "chain count diverged from union-find at map %d", i);
    for (std::size_t k = 0; k < chains.size(); ++k) {
      EXPECT(chains[k].members == oracle[k], "chain members diverged from union-find at map %d",
             i);
    }
  }
  for (int i = 0; i < 500; ++i) {
    ProcessMap map = random_specialization_map(rng, 12);
    auto families = derive_families(map);
    auto oracle = families_oracle(map);
    EXPECT(families.size() == oracle.size(), "family count diverged from path oracle at map %d",
           i);
    for (const ProcessFamily& family : families) {
      EXPECT(oracle.contains(family.standard), "unexpected standard at map %d", i);
      EXPECT(family.variants == oracle.at(family.standard),
             "variants diverged from path oracle at map %d", i);
    }
  }
  ProcessMap shared = load_fixture("shared_custverify.promap");
  EXPECT(containment_closure(shared, "Sales") == std::set<std::string>{"CustVerify"},
         "closure from Sales must be {CustVerify}");
  EXPECT(containment_closure(shared, "AfterSales") == std::set<std::string>{"CustVerify"},
         "closure from AfterSales must be {CustVerify}");
  return true;
}

// 6. Executional semantics of trigger and flow.
bool simulator_semantics() {
  Rng rng(1006);
  for (int i = 0; i < 1000; ++i) {
    auto [map, scenario] = random_simulation_pair(rng, 8);
    Trace trace = simulate(map, scenario, 100000);
    for (const Violation& violation : trace.violations) {
      EXPECT(violation.kind != ViolationKind::StepBudgetExhausted,
             "pair %d left the within-budget regime", i);
    }
    TraceAttribution attribution = attribute_trace(map, scenario, trace);
    EXPECT(attribution.flow_never_instantiates,
           "an Instantiate event had no stimulus or trigger cause at pair %d", i);
    EXPECT(attribution.trigger_precedence,
           "a trigger-caused Start preceded its cause's Act at pair %d", i);
  }

  ProcessMap flow_map = load_fixture("flow_only.promap");
  Trace flow_trace = simulate(flow_map, Scenario{{{"A", ""}}});
  EXPECT(flow_trace.violations.size() == 1, "Flow(A,B) fixture must record one violation");
  EXPECT(flow_trace.violations[0].kind == ViolationKind::FlowWithoutActiveTarget,
         "Flow(A,B) fixture violation kind");
  for (const TraceEvent& event : flow_trace.events) {
    EXPECT(event.process != "B", "flow must never instantiate its target");
  }

  ProcessMap cycle_map = load_fixture("trig_cycle.promap");
  Trace cycle_trace = simulate(cycle_map, Scenario{{{"A", ""}}}, 50);
  EXPECT(cycle_trace.steps_used == 50, "cycle fixture must use exactly the budget, got %llu",
         static_cast<unsigned long long>(cycle_trace.steps_used));
  bool exhausted = false;
  for (const Violation& violation : cycle_trace.violations) {
    exhausted |= violation.kind == ViolationKind::StepBudgetExhausted;
  }
  EXPECT(exhausted, "cycle fixture must record StepBudgetExhausted");
  return true;
}

// 7. Format and interchange round-trips are identities.
bool round_trips() {
  auto check_map = [&](const ProcessMap& map, const char* origin) {
    ParseResult reparsed = parse(format(map), "round-trip");
    EXPECT(reparsed.ok(), "formatted %s map failed to reparse", origin);
    AssemblyResult reassembled = assemble(*reparsed.draft);
    EXPECT(reassembled.ok(), "formatted %s map failed to reassemble", origin);
    EXPECT(*reassembled.map == map, "format round-trip not an identity on a %s map", origin);

    std::string bytes = export_interchange(map);
    EXPECT(export_interchange(map) == bytes, "repeated export differed on a %s map", origin);
    LoadResult loaded = load_interchange(bytes);
    EXPECT(loaded.ok(), "interchange for a %s map failed to load", origin);
    EXPECT(*loaded.map == map, "interchange round-trip not an identity on a %s map", origin);
    EXPECT(export_interchange(*loaded.map) == bytes,
           "reserialized interchange differed on a %s map", origin);
    return true;
  };

  for (const std::string& fixture : kValidFixtures) {
    if (!check_map(load_fixture(fixture), fixture.c_str())) return false;
  }
  Rng rng(1007);
  for (int i = 0; i < 1000; ++i) {
    if (!check_map(random_map(rng), "generated")) return false;
  }
  return true;
}

// 8. Exit codes 0/1/2 exactly as documented.
bool cli_contract() {
  struct Case {
    std::vector<std::string> args;
    int expected;
    const char* label;
  };
  const Case cases[] = {
      {{"check", fixture_path("good.promap")}, 0, "clean check"},
      {{"check", fixture_path("eref.promap")}, 1, "unresolved reference"},
      {{"check", fixture_path("dec_cycle.promap")}, 1, "cycle fixture"},
      {{"check", fixture_path("flow_only.promap")}, 0, "warnings without deny"},
      {{"check", "--deny-warnings", fixture_path("flow_only.promap")}, 1, "denied warnings"},
      {{"check", fixture_path("malformed.promap")}, 2, "malformed file"},
      {{"check", fixture_path("does_not_exist.promap")}, 2, "missing file"},
      {{"check", "--bogus-flag", fixture_path("good.promap")}, 2, "unknown flag"},
      {{"frobnicate"}, 2, "unknown subcommand"},
      {{"simulate", fixture_path("p2p.promap"), "--scenario", fixture_path("p2p_scenario.txt")},
       0,
       "clean simulation"},
      {{"simulate", fixture_path("flow_only.promap"), "--scenario",
        fixture_path("flow_scenario.txt")},
       1,
       "simulation violation"},
      {{"simulate", fixture_path("p2p.promap"), "--scenario", fixture_path("nope.txt")},
       2,
       "missing scenario"},
      {{"fmt", fixture_path("good.promap")}, 0, "fmt clean"},
      {{"fmt", fixture_path("malformed.promap")}, 2, "fmt malformed"},
      {{"export", fixture_path("good.promap"), "--format", "dot"}, 0, "export dot"},
      {{"analyze", fixture_path("acme.promap")}, 0, "analyze clean"},
      {{"analyze", fixture_path("spec_cycle.promap")}, 1, "analyze cyclic"},
  };
  for (const Case& test_case : cases) {
    int code = run_cli_quiet(test_case.args);
    EXPECT(code == test_case.expected, "%s: expected exit %d, got %d", test_case.label,
           test_case.expected, code);
  }
  return true;
}

struct AcceptanceCriterion {
  const char* name;
  bool (*run)();
};

}  // namespace

int main() {
  const AcceptanceCriterion criteria[] = {
      {"atomicity: no grammar derivation yields process interiors (10000 programs)", atomicity},
      {"fixture corpus assembles and validates with zero errors", fixture_corpus_validates},
      {"structural cycle rules raise exactly their designated error and exit 1",
       structural_rules},
      {"triggering classification and customer-consistency findings match hand derivation",
       classification},
      {"chains and families match union-find and exhaustive-path oracles (500+500 maps)",
       composites},
      {"simulator semantics: flow never instantiates, triggers precede (1000 pairs)",
       simulator_semantics},
      {"format and interchange round-trips are identities (fixtures + 1000 maps)", round_trips},
      {"CLI exit-code contract over the input matrix", cli_contract},
  };

  int failed = 0;
  int index = 0;
  for (const AcceptanceCriterion& criterion : criteria) {
    ++index;
    bool ok = criterion.run();
    std::printf("%s  %d. %s\n", ok ? "PASS" : "FAIL", index, criterion.name);
    failed += ok ? 0 : 1;
  }
  std::printf("acceptance: %d/8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
