#pragma once

#include <string>

#include "promap/model.hpp"

namespace promap {

enum class ColorBy { None, Category, Phase, TriggerClass };

struct DotOptions {
  ColorBy color_by = ColorBy::None;

  bool operator==(const DotOptions&) const = default;
};

/// Renders the map as a DOT digraph: processes are boxed nodes, trigger
/// edges solid, flow edges dashed, decomposition edges diamond-tailed,
/// specialization edges hollow-triangle-headed. Groups become cluster
/// outlines when their member sets are pairwise disjoint and a legend
/// comment block otherwise.
std::string export_dot(const ProcessMap& map, const DotOptions& options = {});

}  // namespace promap
