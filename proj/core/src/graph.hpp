#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace promap::detail {

/// Iterative Tarjan over a string-keyed digraph. Returns the non-trivial
/// strongly connected components (size >= 2), each sorted, ordered by
/// smallest member. Self-loops are not considered (assembly rejects them).
inline std::vector<std::vector<std::string>> nontrivial_sccs(
    const std::map<std::string, std::vector<std::string>>& adjacency) {
  std::vector<std::string> nodes;
  nodes.reserve(adjacency.size());
  for (const auto& [node, _] : adjacency) nodes.push_back(node);
  std::map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < nodes.size(); ++i) index_of[nodes[i]] = i;

  const std::size_t n = nodes.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited);
  std::vector<std::size_t> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0;
  std::vector<std::vector<std::string>> result;

  struct Frame {
    std::size_t node;
    std::size_t edge = 0;
  };

  for (std::size_t start = 0; start < n; ++start) {
    if (index[start] != kUnvisited) continue;
    std::vector<Frame> frames{{start}};
    index[start] = lowlink[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!frames.empty()) {
      Frame& frame = frames.back();
      const auto& edges = adjacency.at(nodes[frame.node]);
      if (frame.edge < edges.size()) {
        auto it = index_of.find(edges[frame.edge++]);
        if (it == index_of.end()) continue;
        std::size_t next = it->second;
        if (index[next] == kUnvisited) {
          index[next] = lowlink[next] = next_index++;
          stack.push_back(next);
          on_stack[next] = true;
          frames.push_back({next});
        } else if (on_stack[next]) {
          lowlink[frame.node] = std::min(lowlink[frame.node], index[next]);
        }
        continue;
      }
      std::size_t node = frame.node;
      frames.pop_back();
      if (!frames.empty()) {
        lowlink[frames.back().node] = std::min(lowlink[frames.back().node], lowlink[node]);
      }
      if (lowlink[node] == index[node]) {
        std::vector<std::string> component;
        while (true) {
          std::size_t member = stack.back();
          stack.pop_back();
          on_stack[member] = false;
          component.push_back(nodes[member]);
          if (member == node) break;
        }
        if (component.size() > 1) {
          std::sort(component.begin(), component.end());
          result.push_back(std::move(component));
        }
      }
    }
  }
  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return result;
}

}  // namespace promap::detail
