#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "promap/analysis.hpp"
#include "promap/diagnostics.hpp"
#include "promap/model.hpp"
#include "promap/simulate.hpp"
#include "promap/validate.hpp"

namespace promap {

inline constexpr std::string_view kInterchangeSchemaVersion = "promap/1";

/// Optional report sections bundled with the map into one document.
struct InterchangeSections {
  std::optional<ValidationReport> validation;
  std::optional<AnalysisReport> analysis;
  std::optional<Trace> trace;
};

/// Canonical interchange document: a deterministic function of the map
/// value, with keys in a fixed order. Exporting twice yields identical
/// bytes.
std::string export_interchange(const ProcessMap& map, const InterchangeSections& sections = {});

/// `map` is engaged iff `diagnostics` is empty.
struct LoadResult {
  std::optional<ProcessMap> map;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return map.has_value(); }
};

/// Inverse of export_interchange on its image. Rejects malformed
/// documents (E-FORMAT), unknown schema versions (E-SCHEMA), and
/// referentially broken content (via assembly).
LoadResult load_interchange(std::string_view bytes);

}  // namespace promap
