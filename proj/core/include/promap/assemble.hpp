#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "promap/diagnostics.hpp"
#include "promap/draft.hpp"
#include "promap/model.hpp"

namespace promap {

/// Assembly is total-or-nothing: `map` is engaged iff `diagnostics`
/// is empty.
struct AssemblyResult {
  std::optional<ProcessMap> map;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return map.has_value(); }
};

/// Checks referential integrity and canonicalizes the draft into a
/// ProcessMap: duplicate relations collapse to their first occurrence
/// and `input ... from process P` linkage materializes the matching
/// Trigger relation. Error codes: E-ID (ill-formed identifier), E-DUP
/// (duplicate identifier or phase ordinal), E-REF (unresolved or
/// wrongly-kinded reference), E-SELF (self-referential relation),
/// E-LABEL (empty input or output label).
AssemblyResult assemble(const MapDraft& draft);

}  // namespace promap
