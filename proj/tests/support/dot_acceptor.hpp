#pragma once

// Minimal acceptor for the DOT graph-description grammar, used to check
// exported graphs without shelling out to graphviz. Covers the subset
// promap emits plus the usual generalities: digraph/graph headers,
// node/edge/attr statements, attribute lists, subgraphs, quoted
// identifiers with escapes, and '//', '/* */' and '#' comments.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace promap::testing {

class DotAcceptor {
 public:
  explicit DotAcceptor(std::string_view text) : text_(text) {}

  /// True when the whole input parses as one graph. On failure,
  /// `error()` describes the first problem.
  bool accept() {
    if (!lex()) return false;
    pos_ = 0;
    if (!parse_graph()) return false;
    if (pos_ != tokens_.size()) return fail("trailing content after graph");
    return true;
  }

  const std::string& error() const { return error_; }

 private:
  enum class Kind { Id, LBrace, RBrace, LBracket, RBracket, Semi, Comma, Equals, Edge };

  struct Tok {
    Kind kind;
    std::string text;
  };

  bool fail(std::string message) {
    if (error_.empty()) error_ = std::move(message);
    return false;
  }

  bool lex() {
    std::size_t i = 0;
    while (i < text_.size()) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        ++i;
        continue;
      }
      if (c == '#') {
        while (i < text_.size() && text_[i] != '\n') ++i;
        continue;
      }
      if (c == '/' && i + 1 < text_.size() && text_[i + 1] == '/') {
        while (i < text_.size() && text_[i] != '\n') ++i;
        continue;
      }
      if (c == '/' && i + 1 < text_.size() && text_[i + 1] == '*') {
        std::size_t close = text_.find("*/", i + 2);
        if (close == std::string_view::npos) return fail("unterminated block comment");
        i = close + 2;
        continue;
      }
      if (c == '{') { tokens_.push_back({Kind::LBrace, "{"}); ++i; continue; }
      if (c == '}') { tokens_.push_back({Kind::RBrace, "}"}); ++i; continue; }
      if (c == '[') { tokens_.push_back({Kind::LBracket, "["}); ++i; continue; }
      if (c == ']') { tokens_.push_back({Kind::RBracket, "]"}); ++i; continue; }
      if (c == ';') { tokens_.push_back({Kind::Semi, ";"}); ++i; continue; }
      if (c == ',') { tokens_.push_back({Kind::Comma, ","}); ++i; continue; }
      if (c == '=') { tokens_.push_back({Kind::Equals, "="}); ++i; continue; }
      if (c == '-' && i + 1 < text_.size() && (text_[i + 1] == '>' || text_[i + 1] == '-')) {
        tokens_.push_back({Kind::Edge, std::string(text_.substr(i, 2))});
        i += 2;
        continue;
      }
      if (c == '"') {
        std::size_t j = i + 1;
        while (j < text_.size()) {
          if (text_[j] == '\\' && j + 1 < text_.size()) {
            j += 2;
            continue;
          }
          if (text_[j] == '"') break;
          ++j;
        }
        if (j >= text_.size()) return fail("unterminated quoted id");
        tokens_.push_back({Kind::Id, std::string(text_.substr(i, j - i + 1))});
        i = j + 1;
        continue;
      }
      if (std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.' || c == '-') {
        std::size_t j = i;
        while (j < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[j])) != 0 || text_[j] == '_' ||
                text_[j] == '.' || text_[j] == '-')) {
          ++j;
        }
        tokens_.push_back({Kind::Id, std::string(text_.substr(i, j - i))});
        i = j;
        continue;
      }
      return fail(std::string("illegal character '") + c + "'");
    }
    return true;
  }

  bool at(Kind kind) const { return pos_ < tokens_.size() && tokens_[pos_].kind == kind; }

  bool at_id(std::string_view word) const {
    return at(Kind::Id) && tokens_[pos_].text == word;
  }

  bool eat(Kind kind) {
    if (!at(kind)) return false;
    ++pos_;
    return true;
  }

  bool parse_graph() {
    if (at_id("strict")) ++pos_;
    if (!at_id("digraph") && !at_id("graph")) return fail("expected 'digraph' or 'graph'");
    ++pos_;
    if (at(Kind::Id)) ++pos_;  // optional graph name
    return parse_block();
  }

  bool parse_block() {
    if (!eat(Kind::LBrace)) return fail("expected '{'");
    while (!at(Kind::RBrace)) {
      if (pos_ >= tokens_.size()) return fail("unexpected end of input, expected '}'");
      if (!parse_statement()) return false;
      eat(Kind::Semi);
    }
    ++pos_;  // '}'
    return true;
  }

  bool parse_statement() {
    if (at_id("subgraph")) {
      ++pos_;
      if (at(Kind::Id)) ++pos_;
      if (!parse_block()) return false;
      return parse_edge_rest();
    }
    if (at(Kind::LBrace)) {
      if (!parse_block()) return false;
      return parse_edge_rest();
    }
    if (!at(Kind::Id)) return fail("expected a statement");
    std::string head = tokens_[pos_].text;
    ++pos_;
    if (at(Kind::Equals)) {  // ID '=' ID  (graph attribute)
      ++pos_;
      if (!eat(Kind::Id)) return fail("expected a value after '='");
      return true;
    }
    if (head == "graph" || head == "node" || head == "edge") {
      if (at(Kind::LBracket)) return parse_attr_lists();
    }
    if (!parse_edge_rest()) return false;
    if (at(Kind::LBracket)) return parse_attr_lists();
    return true;
  }

  // Zero or more '-> node' continuations followed by nothing.
  bool parse_edge_rest() {
    while (at(Kind::Edge)) {
      ++pos_;
      if (at_id("subgraph")) {
        ++pos_;
        if (at(Kind::Id)) ++pos_;
        if (!parse_block()) return false;
        continue;
      }
      if (at(Kind::LBrace)) {
        if (!parse_block()) return false;
        continue;
      }
      if (!eat(Kind::Id)) return fail("expected a node after an edge operator");
    }
    return true;
  }

  bool parse_attr_lists() {
    while (eat(Kind::LBracket)) {
      while (at(Kind::Id)) {
        ++pos_;
        if (!eat(Kind::Equals)) return fail("expected '=' in attribute");
        if (!eat(Kind::Id)) return fail("expected an attribute value");
        if (at(Kind::Comma) || at(Kind::Semi)) ++pos_;
      }
      if (!eat(Kind::RBracket)) return fail("expected ']'");
    }
    return true;
  }

  std::string_view text_;
  std::vector<Tok> tokens_;
  std::size_t pos_ = 0;
  std::string error_;
};

inline bool accepts_dot(std::string_view text, std::string* error = nullptr) {
  DotAcceptor acceptor(text);
  bool ok = acceptor.accept();
  if (!ok && error != nullptr) *error = acceptor.error();
  return ok;
}

}  // namespace promap::testing
