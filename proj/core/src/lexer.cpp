#include "promap/lexer.hpp"

#include <array>
#include <cctype>
#include <sstream>

namespace promap {

namespace {

constexpr std::array kKeywords = {
    "map",      "category", "subcategory", "parent",   "phase",    "ordinal",
    "actor",    "object",   "kind",        "permanent", "case",    "abstract",
    "service",  "external", "customer",    "process",  "owner",    "input",
    "output",   "product",  "outcome",     "from",     "to",       "provides",
    "uses",     "handles",  "tag",         "group",    "by",       "members",
    "contains", "variant-of",
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-';
}

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::String: return "string";
    case TokenKind::Integer: return "integer";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::Comma: return "','";
    case TokenKind::Equals: return "'='";
    case TokenKind::TriggerArrow: return "'->'";
    case TokenKind::FlowArrow: return "'~>'";
    case TokenKind::Newline: return "end of line";
    case TokenKind::EndOfFile: return "end of file";
  }
  return "token";
}

std::string render(const ParseDiagnostic& diagnostic) {
  std::ostringstream out;
  out << to_string(diagnostic.span) << ": error: " << diagnostic.message;
  if (!diagnostic.expected.empty()) {
    out << " (expected ";
    for (std::size_t i = 0; i < diagnostic.expected.size(); ++i) {
      if (i > 0) out << (i + 1 == diagnostic.expected.size() ? " or " : ", ");
      out << diagnostic.expected[i];
    }
    out << ')';
  }
  return out.str();
}

bool is_keyword(std::string_view word) {
  for (std::string_view keyword : kKeywords) {
    if (word == keyword) return true;
  }
  return false;
}

bool is_identifier(std::string_view text) {
  if (text.empty() || !is_ident_start(text.front())) return false;
  for (char c : text) {
    if (!is_ident_char(c)) return false;
  }
  return !is_keyword(text);
}

LexResult tokenize(std::string_view text, std::string_view file) {
  LexResult result;
  std::uint32_t line = 1;
  std::uint32_t column = 1;
  std::size_t pos = 0;
  if (text.starts_with("\xEF\xBB\xBF")) pos = 3;  // byte-order mark

  auto span_here = [&](std::uint32_t length) {
    return SourceSpan{std::string(file), line, column, length};
  };
  auto push = [&](TokenKind kind, std::string token_text, std::uint32_t length) {
    result.tokens.push_back({kind, std::move(token_text), span_here(length)});
    column += length;
    pos += length;
  };
  auto fail = [&](std::string message, std::uint32_t length = 1) {
    result.error = ParseDiagnostic{span_here(length), std::move(message), {}};
  };

  while (pos < text.size()) {
    char c = text[pos];
    if (c == ' ' || c == '\t') {
      ++pos;
      ++column;
      continue;
    }
    if (c == '\r') {
      if (pos + 1 < text.size() && text[pos + 1] == '\n') {
        result.tokens.push_back({TokenKind::Newline, "\n", span_here(2)});
        pos += 2;
        ++line;
        column = 1;
        continue;
      }
      fail("stray carriage return");
      return result;
    }
    if (c == '\n') {
      result.tokens.push_back({TokenKind::Newline, "\n", span_here(1)});
      ++pos;
      ++line;
      column = 1;
      continue;
    }
    if (c == '#') {
      while (pos < text.size() && text[pos] != '\n') {
        ++pos;
        ++column;
      }
      continue;
    }
    if (c == '{') {
      push(TokenKind::LBrace, "{", 1);
      continue;
    }
    if (c == '}') {
      push(TokenKind::RBrace, "}", 1);
      continue;
    }
    if (c == ',') {
      push(TokenKind::Comma, ",", 1);
      continue;
    }
    if (c == '=') {
      push(TokenKind::Equals, "=", 1);
      continue;
    }
    if (c == '-') {
      if (pos + 1 < text.size() && text[pos + 1] == '>') {
        push(TokenKind::TriggerArrow, "->", 2);
        continue;
      }
      fail("illegal character '-'");
      return result;
    }
    if (c == '~') {
      if (pos + 1 < text.size() && text[pos + 1] == '>') {
        push(TokenKind::FlowArrow, "~>", 2);
        continue;
      }
      fail("illegal character '~'");
      return result;
    }
    if (c == '"') {
      std::string value;
      std::size_t end = pos + 1;
      bool closed = false;
      while (end < text.size()) {
        char s = text[end];
        if (s == '"') {
          closed = true;
          ++end;
          break;
        }
        if (s == '\n' || s == '\r') break;
        if (s == '\\') {
          char escape = end + 1 < text.size() ? text[end + 1] : '\0';
          if (escape == '"' || escape == '\\') {
            value.push_back(escape);
            end += 2;
            continue;
          }
          if (escape == 'n' || escape == 't' || escape == 'r') {
            value.push_back(escape == 'n' ? '\n' : escape == 't' ? '\t' : '\r');
            end += 2;
            continue;
          }
          fail("unknown escape sequence in string literal",
               static_cast<std::uint32_t>(end - pos + 1));
          return result;
        }
        value.push_back(s);
        ++end;
      }
      if (!closed) {
        fail("unterminated string literal", static_cast<std::uint32_t>(end - pos));
        return result;
      }
      push(TokenKind::String, std::move(value), static_cast<std::uint32_t>(end - pos));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      std::size_t end = pos;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end])) != 0) ++end;
      push(TokenKind::Integer, std::string(text.substr(pos, end - pos)),
           static_cast<std::uint32_t>(end - pos));
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t end = pos + 1;
      while (end < text.size()) {
        char s = text[end];
        if (s == '-') {
          // A hyphen belongs to the identifier only when another
          // identifier character follows; "A->B" lexes as an arrow.
          if (end + 1 < text.size() && is_ident_char(text[end + 1]) && text[end + 1] != '-') {
            ++end;
            continue;
          }
          break;
        }
        if (!is_ident_char(s)) break;
        ++end;
      }
      std::string word(text.substr(pos, end - pos));
      TokenKind kind = is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier;
      push(kind, std::move(word), static_cast<std::uint32_t>(end - pos));
      continue;
    }
    std::ostringstream message;
    message << "illegal character '" << c << "'";
    fail(message.str());
    return result;
  }

  result.tokens.push_back({TokenKind::EndOfFile, "", span_here(0)});
  return result;
}

}  // namespace promap
