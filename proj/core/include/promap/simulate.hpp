#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "promap/diagnostics.hpp"
#include "promap/model.hpp"

namespace promap {

/// An external start injected into the simulation.
struct Stimulus {
  std::string process;
  std::string label;

  bool operator==(const Stimulus&) const = default;
};

struct Scenario {
  std::vector<Stimulus> stimuli;

  bool operator==(const Scenario&) const = default;
};

/// Parses scenario text: one `start <process-id> [label]` per line,
/// '#' comments and blank lines allowed.
struct ScenarioParseResult {
  std::optional<Scenario> scenario;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return scenario.has_value(); }
};

ScenarioParseResult parse_scenario(std::string_view text, std::string_view file = "<scenario>");

using InstanceId = std::uint64_t;

enum class EventKind { Instantiate, Start, Act, FlowDelivery, Complete };

std::string_view to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(std::string_view text);

/// One simulation step. `peer` is the sending instance for
/// FlowDelivery and the causing instance for trigger-caused
/// Instantiate/Start; stimulus-caused events carry none.
struct TraceEvent {
  std::uint64_t step = 0;
  EventKind kind = EventKind::Instantiate;
  std::string process;
  InstanceId instance = 0;
  std::optional<InstanceId> peer;

  bool operator==(const TraceEvent&) const = default;
};

enum class ViolationKind { FlowWithoutActiveTarget, StepBudgetExhausted };

std::string_view to_string(ViolationKind kind);
std::optional<ViolationKind> violation_kind_from_string(std::string_view text);

struct Violation {
  ViolationKind kind = ViolationKind::FlowWithoutActiveTarget;
  std::string detail;
  std::uint64_t step = 0;

  bool operator==(const Violation&) const = default;
};

struct Trace {
  std::vector<TraceEvent> events;
  std::vector<Violation> violations;
  std::uint64_t steps_used = 0;

  bool operator==(const Trace&) const = default;
};

inline constexpr std::uint64_t kDefaultStepBudget = 10000;

/// Deterministic FIFO execution of the trigger/flow semantics: every
/// stimulus instantiates and starts an instance of its process; a
/// dequeued instance acts, fires its outgoing Trigger relations
/// (instantiating and starting new instances), delivers its outgoing
/// Flow relations to the oldest started-but-uncompleted target
/// instance (recording FlowWithoutActiveTarget when none exists), and
/// completes. Each emitted event consumes one step; when the budget is
/// reached with work remaining the run stops and records
/// StepBudgetExhausted. Throws std::invalid_argument on an unknown
/// scenario process or a zero budget.
Trace simulate(const ProcessMap& map, const Scenario& scenario,
               std::uint64_t budget = kDefaultStepBudget);

/// True iff every Start of `dst` in the trace is preceded by an Act of
/// some `src` instance (vacuously true without dst events).
bool check_ordering(const Trace& trace, std::string_view src, std::string_view dst);

}  // namespace promap
