#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "promap/span.hpp"

namespace promap {

enum class Severity { Info, Warning, Error };

std::string_view to_string(Severity severity);
std::optional<Severity> severity_from_string(std::string_view text);

/// A finding produced by assembly, validation, or interchange loading.
/// `subjects` names the offending elements; `span` is present when the
/// element came from a source file.
struct Diagnostic {
  std::string code;
  Severity severity = Severity::Error;
  std::string message;
  std::vector<std::string> subjects;
  std::optional<SourceSpan> span;

  bool operator==(const Diagnostic&) const = default;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// "file:line:col: severity CODE: message" (location omitted when absent).
std::string render(const Diagnostic& diagnostic);

}  // namespace promap
