#pragma once

#include <optional>
#include <string>
#include <vector>

#include "promap/model.hpp"
#include "promap/span.hpp"

namespace promap {

template <typename T>
struct Spanned {
  T value;
  std::optional<SourceSpan> span;
};

/// Unvalidated map content as produced by the DSL frontend or the
/// interchange loader. May contain duplicate identifiers, dangling
/// references, and self-referential relations; assembly decides.
struct MapDraft {
  std::string name;
  std::vector<Spanned<Process>> processes;
  std::vector<Spanned<EAElement>> ea_elements;
  std::vector<Spanned<Category>> categories;
  std::vector<Spanned<Phase>> phases;
  std::vector<Spanned<Relation>> relations;
  std::vector<Spanned<Group>> groups;
};

}  // namespace promap
