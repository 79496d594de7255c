#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "promap/draft.hpp"
#include "promap/lexer.hpp"

namespace promap {

/// `draft` is engaged iff `diagnostics` is empty.
struct ParseResult {
  std::optional<MapDraft> draft;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return draft.has_value(); }
};

/// Parses promap DSL text into a draft. Recovers at statement
/// boundaries so several syntax errors can be reported per run;
/// duplicate declarations are reported at their second occurrence.
/// An empty (or comment-only) file yields an empty draft named after
/// the file.
ParseResult parse(std::string_view text, std::string_view file = "<input>");

}  // namespace promap
