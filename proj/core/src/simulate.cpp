#include "promap/simulate.hpp"

#include <deque>
#include <sstream>
#include <stdexcept>

namespace promap {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Instantiate: return "instantiate";
    case EventKind::Start: return "start";
    case EventKind::Act: return "act";
    case EventKind::FlowDelivery: return "flow_delivery";
    case EventKind::Complete: return "complete";
  }
  return "instantiate";
}

std::optional<EventKind> event_kind_from_string(std::string_view text) {
  if (text == "instantiate") return EventKind::Instantiate;
  if (text == "start") return EventKind::Start;
  if (text == "act") return EventKind::Act;
  if (text == "flow_delivery") return EventKind::FlowDelivery;
  if (text == "complete") return EventKind::Complete;
  return std::nullopt;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::FlowWithoutActiveTarget: return "flow_without_active_target";
    case ViolationKind::StepBudgetExhausted: return "step_budget_exhausted";
  }
  return "flow_without_active_target";
}

std::optional<ViolationKind> violation_kind_from_string(std::string_view text) {
  if (text == "flow_without_active_target") return ViolationKind::FlowWithoutActiveTarget;
  if (text == "step_budget_exhausted") return ViolationKind::StepBudgetExhausted;
  return std::nullopt;
}

ScenarioParseResult parse_scenario(std::string_view text, std::string_view file) {
  ScenarioParseResult result;
  Scenario scenario;
  std::uint32_t line_no = 0;
  std::size_t start = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
      s.remove_suffix(1);
    }
    return s;
  };
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view raw =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    std::string_view line = raw;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    SourceSpan span{std::string(file), line_no, 1, static_cast<std::uint32_t>(raw.size())};
    std::size_t space = line.find_first_of(" \t");
    std::string_view head = space == std::string_view::npos ? line : line.substr(0, space);
    if (head != "start") {
      result.diagnostics.push_back({"E-SCENARIO", Severity::Error,
                                    "expected 'start <process-id> [label]'", {}, span});
      continue;
    }
    std::string_view rest = space == std::string_view::npos ? std::string_view{}
                                                            : trim(line.substr(space + 1));
    if (rest.empty()) {
      result.diagnostics.push_back(
          {"E-SCENARIO", Severity::Error, "missing process identifier after 'start'", {}, span});
      continue;
    }
    std::size_t id_end = rest.find_first_of(" \t");
    std::string id(id_end == std::string_view::npos ? rest : rest.substr(0, id_end));
    std::string label(id_end == std::string_view::npos ? std::string_view{}
                                                       : trim(rest.substr(id_end + 1)));
    scenario.stimuli.push_back({std::move(id), std::move(label)});
  }
  if (result.diagnostics.empty()) result.scenario = std::move(scenario);
  return result;
}

namespace {

enum class LifecycleState { Created, Started, Acted, Completed };

struct Instance {
  std::string process;
  LifecycleState state = LifecycleState::Created;
};

}  // namespace

Trace simulate(const ProcessMap& map, const Scenario& scenario, std::uint64_t budget) {
  if (budget == 0) throw std::invalid_argument("simulation step budget must be positive");
  for (const Stimulus& stimulus : scenario.stimuli) {
    if (!map.processes.contains(stimulus.process)) {
      throw std::invalid_argument("unknown scenario process '" + stimulus.process + "'");
    }
  }

  Trace trace;
  std::vector<Instance> instances;
  std::deque<InstanceId> queue;
  bool exhausted = false;

  auto emit = [&](EventKind kind, const std::string& process, InstanceId instance,
                  std::optional<InstanceId> peer) {
    if (trace.steps_used == budget) {
      if (!exhausted) {
        exhausted = true;
        std::ostringstream detail;
        detail << "step budget of " << budget << " exhausted with work remaining";
        trace.violations.push_back({ViolationKind::StepBudgetExhausted, detail.str(), budget});
      }
      return false;
    }
    ++trace.steps_used;
    trace.events.push_back({trace.steps_used, kind, process, instance, peer});
    return true;
  };

  // Instantiate + Start a fresh instance; `cause` is the triggering
  // instance, absent for scenario stimuli.
  auto spawn = [&](const std::string& process, std::optional<InstanceId> cause) {
    InstanceId id = instances.size() + 1;
    if (!emit(EventKind::Instantiate, process, id, cause)) return false;
    instances.push_back({process, LifecycleState::Created});
    if (!emit(EventKind::Start, process, id, cause)) return false;
    instances[id - 1].state = LifecycleState::Started;
    queue.push_back(id);
    return true;
  };

  for (const Stimulus& stimulus : scenario.stimuli) {
    if (!spawn(stimulus.process, std::nullopt)) break;
  }

  while (!queue.empty() && !exhausted) {
    InstanceId current = queue.front();
    queue.pop_front();
    const std::string process = instances[current - 1].process;
    if (!emit(EventKind::Act, process, current, std::nullopt)) break;
    instances[current - 1].state = LifecycleState::Acted;

    // All outgoing triggers fire before outgoing flows, each in
    // relation declaration order.
    for (const Relation& relation : map.relations) {
      if (exhausted) break;
      if (relation.kind != RelationKind::Trigger || relation.from != process) continue;
      spawn(relation.to, current);
    }
    for (const Relation& relation : map.relations) {
      if (exhausted) break;
      if (relation.kind != RelationKind::Flow || relation.from != process) continue;
      // Oldest target instance that has started and not yet completed;
      // a merely Created instance has not started and does not count.
      std::optional<InstanceId> target;
      for (std::size_t i = 0; i < instances.size(); ++i) {
        if (instances[i].process != relation.to) continue;
        if (instances[i].state == LifecycleState::Started ||
            instances[i].state == LifecycleState::Acted) {
          target = i + 1;
          break;
        }
      }
      if (target) {
        emit(EventKind::FlowDelivery, relation.to, *target, current);
      } else {
        std::ostringstream detail;
        detail << "flow from '" << relation.from << "' to '" << relation.to
               << "': no started instance to receive";
        trace.violations.push_back(
            {ViolationKind::FlowWithoutActiveTarget, detail.str(), trace.steps_used});
      }
    }
    if (exhausted) break;
    if (!emit(EventKind::Complete, process, current, std::nullopt)) break;
    instances[current - 1].state = LifecycleState::Completed;
  }

  return trace;
}

bool check_ordering(const Trace& trace, std::string_view src, std::string_view dst) {
  bool src_acted = false;
  for (const TraceEvent& event : trace.events) {
    if (event.kind == EventKind::Act && event.process == src) src_acted = true;
    if (event.kind == EventKind::Start && event.process == dst && !src_acted) return false;
  }
  return true;
}

}  // namespace promap
