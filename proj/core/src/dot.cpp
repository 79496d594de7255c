#include "promap/dot.hpp"

#include <map>
#include <sstream>
#include <vector>

#include "promap/analysis.hpp"

namespace promap {

namespace {

std::string quoted(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('"');
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    // Newlines become left-justified label breaks; raw line breaks
    // inside quoted strings confuse many DOT consumers.
    if (c == '\n') {
      out += "\\l";
      continue;
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// Colorblind-safe fill palette, cycled per distinct color key.
constexpr std::string_view kPalette[] = {
    "#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6",
    "#ffff99", "#1f78b4", "#33a02c", "#e31a1c", "#ff7f00",
};

std::map<std::string, std::string> color_keys(const ProcessMap& map, ColorBy color_by) {
  std::map<std::string, std::string> keys;
  if (color_by == ColorBy::None) return keys;
  if (color_by == ColorBy::TriggerClass) {
    for (const auto& [id, trigger_class] : classify_triggering(map)) {
      keys[id] = std::string(to_string(trigger_class));
    }
    return keys;
  }
  for (const auto& [id, process] : map.processes) {
    const auto& tags = color_by == ColorBy::Category ? process.categories : process.phases;
    if (!tags.empty()) keys[id] = *tags.begin();
  }
  return keys;
}

void append_node(std::ostream& out, std::string_view indent, const Process& process,
                 const std::map<std::string, std::string>& keys,
                 const std::map<std::string, std::size_t>& palette_index) {
  out << indent << quoted(process.id) << " [shape=box, label=" << quoted(process.name);
  if (auto it = keys.find(process.id); it != keys.end()) {
    std::size_t index = palette_index.at(it->second) % std::size(kPalette);
    out << ", style=filled, fillcolor=" << quoted(kPalette[index]);
  }
  out << "];\n";
}

}  // namespace

std::string export_dot(const ProcessMap& map, const DotOptions& options) {
  std::ostringstream out;
  out << "digraph " << quoted(map.name) << " {\n";

  auto keys = color_keys(map, options.color_by);
  std::map<std::string, std::size_t> palette_index;
  for (const auto& [_, key] : keys) {
    palette_index.emplace(key, palette_index.size());
  }

  auto group_results = evaluate_groups(map);
  bool disjoint = true;
  {
    std::set<std::string> seen;
    for (const GroupResult& group : group_results) {
      for (const std::string& member : group.members) {
        if (!seen.insert(member).second) disjoint = false;
      }
    }
  }

  std::set<std::string> clustered;
  if (disjoint && !group_results.empty()) {
    for (std::size_t i = 0; i < group_results.size(); ++i) {
      const GroupResult& group = group_results[i];
      if (group.members.empty()) continue;
      out << "  subgraph cluster_" << i << " {\n";
      out << "    label=" << quoted(group.name) << ";\n";
      for (const std::string& member : group.members) {
        append_node(out, "    ", map.processes.at(member), keys, palette_index);
        clustered.insert(member);
      }
      out << "  }\n";
    }
  }
  for (const auto& [id, process] : map.processes) {
    if (!clustered.contains(id)) append_node(out, "  ", process, keys, palette_index);
  }
  if (!disjoint) {
    // Overlapping groups cannot nest as clusters; render them as a legend.
    std::ostringstream label;
    for (const GroupResult& group : group_results) {
      label << "group \"" << group.name << "\":";
      for (const std::string& member : group.members) label << ' ' << member;
      label << '\n';
    }
    out << "  \"__legend__\" [shape=note, label=" << quoted(label.str()) << "];\n";
  }

  for (const Relation& relation : map.relations) {
    out << "  " << quoted(relation.from) << " -> " << quoted(relation.to);
    switch (relation.kind) {
      case RelationKind::Trigger:
        out << " [style=solid]";
        break;
      case RelationKind::Flow:
        out << " [style=dashed]";
        break;
      case RelationKind::Decomposition:
        out << " [dir=both, arrowtail=diamond, arrowhead=none]";
        break;
      case RelationKind::Specialization:
        out << " [arrowhead=onormal]";
        break;
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace promap
