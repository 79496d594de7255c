#pragma once

#include <cstdint>
#include <string>

namespace promap {

/// Location of a token or declaration in a source file. Lines and columns
/// are 1-based; length counts source characters.
struct SourceSpan {
  std::string file;
  std::uint32_t line = 1;
  std::uint32_t column = 1;
  std::uint32_t length = 0;

  bool operator==(const SourceSpan&) const = default;
};

std::string to_string(const SourceSpan& span);

}  // namespace promap
