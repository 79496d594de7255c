#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "promap/span.hpp"

namespace promap {

enum class TokenKind {
  Identifier,
  Keyword,
  String,
  Integer,
  LBrace,
  RBrace,
  Comma,
  Equals,
  TriggerArrow,  // ->
  FlowArrow,     // ~>
  Newline,
  EndOfFile,
};

std::string_view to_string(TokenKind kind);

/// `text` holds the identifier or keyword spelling, the decoded string
/// value, or the digits of an integer literal.
struct Token {
  TokenKind kind = TokenKind::EndOfFile;
  std::string text;
  SourceSpan span;
};

struct ParseDiagnostic {
  SourceSpan span;
  std::string message;
  std::vector<std::string> expected;

  bool operator==(const ParseDiagnostic&) const = default;
};

std::string render(const ParseDiagnostic& diagnostic);

/// Tokens are valid only when no error is present; lexing stops at the
/// first illegal character or unterminated string.
struct LexResult {
  std::vector<Token> tokens;
  std::optional<ParseDiagnostic> error;

  bool ok() const { return !error.has_value(); }
};

/// Splits source text into tokens. Whitespace and '#' line comments are
/// skipped; line breaks become Newline tokens (LF and CRLF both accepted).
LexResult tokenize(std::string_view text, std::string_view file = "<input>");

/// Reserved words of the DSL; keywords can never be identifiers.
bool is_keyword(std::string_view word);

/// Letters, digits, '_' and '-', starting with a letter, and not a
/// reserved keyword.
bool is_identifier(std::string_view text);

}  // namespace promap
