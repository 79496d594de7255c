#include "promap/parser.hpp"

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <utility>

namespace promap {

namespace {

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string_view file)
      : tokens_(std::move(tokens)), file_(file) {
    draft_.name = std::string(file);
  }

  ParseResult run() {
    skip_newlines();
    if (at(TokenKind::EndOfFile)) {
      return finish();  // empty file: empty draft named after the file
    }
    if (!expect_keyword("map")) return finish();
    if (const Token* name = expect(TokenKind::String, "map name")) {
      draft_.name = name->text;
    } else {
      return finish();
    }
    if (!expect(TokenKind::LBrace, "'{'")) return finish();
    parse_map_body();
    skip_newlines();
    if (!at(TokenKind::EndOfFile)) {
      error("unexpected content after the map block", {"end of file"});
    }
    return finish();
  }

 private:
  // ---- token access ----------------------------------------------------
  const Token& cur() const { return tokens_[pos_]; }

  bool at(TokenKind kind) const { return cur().kind == kind; }

  bool at_keyword(std::string_view word) const {
    return cur().kind == TokenKind::Keyword && cur().text == word;
  }

  void advance() {
    if (pos_ + 1 < tokens_.size()) ++pos_;
  }

  void skip_newlines() {
    while (at(TokenKind::Newline)) advance();
  }

  const Token* expect(TokenKind kind, std::string description) {
    if (at(kind)) {
      const Token* token = &cur();
      advance();
      return token;
    }
    error_here(description);
    return nullptr;
  }

  bool expect_keyword(std::string_view word) {
    if (at_keyword(word)) {
      advance();
      return true;
    }
    std::ostringstream description;
    description << "'" << word << "'";
    error_here(description.str());
    return false;
  }

  const Token* expect_identifier(std::string_view what) {
    if (at(TokenKind::Identifier)) {
      const Token* token = &cur();
      advance();
      return token;
    }
    if (at(TokenKind::Keyword)) {
      std::ostringstream message;
      message << "'" << cur().text << "' is a reserved keyword and cannot name a " << what;
      error(message.str(), {std::string(what) + " identifier"});
      return nullptr;
    }
    error_here(std::string(what) + " identifier");
    return nullptr;
  }

  // ---- diagnostics and recovery -----------------------------------------
  void error(std::string message, std::vector<std::string> expected) {
    diagnostics_.push_back({cur().span, std::move(message), std::move(expected)});
  }

  void error_here(std::string expected_description) {
    std::ostringstream message;
    message << "unexpected " << to_string(cur().kind);
    if (cur().kind == TokenKind::Identifier || cur().kind == TokenKind::Keyword) {
      message << " '" << cur().text << "'";
    }
    error(message.str(), {std::move(expected_description)});
  }

  // Skips to the next statement boundary without consuming it.
  void recover() {
    while (!at(TokenKind::Newline) && !at(TokenKind::RBrace) && !at(TokenKind::EndOfFile)) {
      advance();
    }
  }

  // Every statement ends at a line break or just before a closing brace.
  bool statement_end() {
    if (at(TokenKind::Newline)) {
      advance();
      return true;
    }
    if (at(TokenKind::RBrace) || at(TokenKind::EndOfFile)) return true;
    error_here("end of statement");
    recover();
    return false;
  }

  // ---- duplicate bookkeeping ---------------------------------------------
  void declare(std::set<std::string>& names, std::string_view kind, const Token& id) {
    if (!names.insert(id.text).second) {
      std::ostringstream message;
      message << "duplicate " << kind << " '" << id.text << "'";
      diagnostics_.push_back({id.span, message.str(), {}});
    }
  }

  // ---- grammar ------------------------------------------------------------
  void parse_map_body() {
    while (true) {
      skip_newlines();
      if (at(TokenKind::RBrace)) {
        advance();
        return;
      }
      if (at(TokenKind::EndOfFile)) {
        error("unexpected end of file inside the map block", {"'}'"});
        return;
      }
      parse_map_statement();
    }
  }

  void parse_map_statement() {
    if (at_keyword("category")) {
      advance();
      parse_category(std::nullopt, /*allow_parent_clause=*/true);
      return;
    }
    if (at_keyword("phase")) {
      advance();
      parse_phase();
      return;
    }
    if (at_keyword("actor")) {
      advance();
      parse_ea_element(EAKind::Actor);
      return;
    }
    if (at_keyword("object")) {
      advance();
      parse_object();
      return;
    }
    if (at_keyword("service")) {
      advance();
      parse_ea_element(EAKind::Service);
      return;
    }
    if (at_keyword("external")) {
      advance();
      if (!expect_keyword("customer")) {
        recover();
        return;
      }
      parse_ea_element(EAKind::ExternalCustomer);
      return;
    }
    if (at_keyword("process")) {
      advance();
      parse_process();
      return;
    }
    if (at_keyword("group")) {
      advance();
      parse_group();
      return;
    }
    if (at(TokenKind::Identifier)) {
      parse_relation();
      return;
    }
    error_here("a declaration or a relation statement");
    recover();
  }

  std::optional<std::string> optional_display_name() {
    if (at(TokenKind::String)) {
      std::string name = cur().text;
      advance();
      return name;
    }
    return std::nullopt;
  }

  void parse_category(std::optional<std::string> parent, bool allow_parent_clause) {
    const Token* id = expect_identifier("category");
    if (!id) {
      recover();
      return;
    }
    declare(seen_categories_, "category", *id);
    Category category;
    category.id = id->text;
    category.name = optional_display_name().value_or(id->text);
    category.parent = std::move(parent);
    if (allow_parent_clause && at_keyword("parent")) {
      advance();
      const Token* parent_id = expect_identifier("category");
      if (!parent_id) {
        recover();
        return;
      }
      category.parent = parent_id->text;
    }
    draft_.categories.push_back({std::move(category), id->span});
    if (at(TokenKind::LBrace)) {
      advance();
      parse_subcategory_block(id->text);
    }
    statement_end();
  }

  void parse_subcategory_block(const std::string& parent_id) {
    while (true) {
      skip_newlines();
      if (at(TokenKind::RBrace)) {
        advance();
        return;
      }
      if (at(TokenKind::EndOfFile)) {
        error("unexpected end of file inside a category block", {"'}'"});
        return;
      }
      if (at_keyword("subcategory")) {
        advance();
        parse_category(parent_id, /*allow_parent_clause=*/false);
        continue;
      }
      error_here("'subcategory'");
      recover();
    }
  }

  void parse_phase() {
    const Token* id = expect_identifier("phase");
    if (!id) {
      recover();
      return;
    }
    declare(seen_phases_, "phase", *id);
    Phase phase;
    phase.id = id->text;
    phase.name = optional_display_name().value_or(id->text);
    if (at_keyword("ordinal")) {
      advance();
      const Token* number = expect(TokenKind::Integer, "ordinal value");
      if (!number) {
        recover();
        return;
      }
      unsigned long long value = std::strtoull(number->text.c_str(), nullptr, 10);
      if (value > std::numeric_limits<std::uint32_t>::max()) {
        diagnostics_.push_back({number->span, "ordinal value out of range", {}});
        recover();
        return;
      }
      phase.ordinal = static_cast<std::uint32_t>(value);
    }
    draft_.phases.push_back({std::move(phase), id->span});
    statement_end();
  }

  void parse_ea_element(EAKind kind) {
    const Token* id = expect_identifier("element");
    if (!id) {
      recover();
      return;
    }
    declare(seen_ea_, "enterprise architecture element", *id);
    EAElement element;
    element.id = id->text;
    element.name = optional_display_name().value_or(id->text);
    element.kind = kind;
    draft_.ea_elements.push_back({std::move(element), id->span});
    statement_end();
  }

  void parse_object() {
    const Token* id = expect_identifier("object");
    if (!id) {
      recover();
      return;
    }
    declare(seen_ea_, "enterprise architecture element", *id);
    EAElement element;
    element.id = id->text;
    element.name = optional_display_name().value_or(id->text);
    element.kind = EAKind::Object;
    if (at_keyword("kind")) {
      advance();
      if (at_keyword("permanent")) {
        element.object_kind = ObjectKind::Permanent;
        advance();
      } else if (at_keyword("case")) {
        element.object_kind = ObjectKind::Case;
        advance();
      } else if (at_keyword("abstract")) {
        element.object_kind = ObjectKind::Abstract;
        advance();
      } else {
        error_here("'permanent', 'case' or 'abstract'");
        recover();
        return;
      }
    }
    draft_.ea_elements.push_back({std::move(element), id->span});
    statement_end();
  }

  void parse_process() {
    const Token* id = expect_identifier("process");
    if (!id) {
      recover();
      return;
    }
    declare(seen_processes_, "process", *id);
    Process process;
    process.id = id->text;
    process.name = optional_display_name().value_or(id->text);
    if (at(TokenKind::LBrace)) {
      advance();
      parse_process_body(process);
    }
    draft_.processes.push_back({std::move(process), id->span});
    statement_end();
  }

  void parse_process_body(Process& process) {
    while (true) {
      skip_newlines();
      if (at(TokenKind::RBrace)) {
        advance();
        return;
      }
      if (at(TokenKind::EndOfFile)) {
        error("unexpected end of file inside a process block", {"'}'"});
        return;
      }
      parse_process_statement(process);
    }
  }

  void parse_process_statement(Process& process) {
    if (at_keyword("category")) {
      advance();
      if (const Token* id = expect_identifier("category")) {
        process.categories.insert(id->text);
        statement_end();
      } else {
        recover();
      }
      return;
    }
    if (at_keyword("phase")) {
      advance();
      if (const Token* id = expect_identifier("phase")) {
        process.phases.insert(id->text);
        statement_end();
      } else {
        recover();
      }
      return;
    }
    if (at_keyword("owner")) {
      advance();
      if (const Token* id = expect_identifier("actor")) {
        process.owners.insert(id->text);
        statement_end();
      } else {
        recover();
      }
      return;
    }
    if (at_keyword("provides")) {
      advance();
      if (const Token* id = expect_identifier("service")) {
        process.provides.insert(id->text);
        statement_end();
      } else {
        recover();
      }
      return;
    }
    if (at_keyword("uses")) {
      advance();
      if (const Token* id = expect_identifier("object")) {
        process.uses.insert(id->text);
        statement_end();
      } else {
        recover();
      }
      return;
    }
    if (at_keyword("handles")) {
      advance();
      if (const Token* id = expect_identifier("object")) {
        process.handles.insert(id->text);
        statement_end();
      } else {
        recover();
      }
      return;
    }
    if (at_keyword("input")) {
      advance();
      const Token* label = expect(TokenKind::String, "input label");
      if (!label || !expect_keyword("from")) {
        recover();
        return;
      }
      if (auto ref = parse_customer_ref()) {
        process.inputs.push_back({label->text, *ref});
        statement_end();
      } else {
        recover();
      }
      return;
    }
    if (at_keyword("output")) {
      advance();
      const Token* label = expect(TokenKind::String, "output label");
      if (!label) {
        recover();
        return;
      }
      OutputKind kind = OutputKind::Product;
      if (at_keyword("product")) {
        advance();
      } else if (at_keyword("outcome")) {
        kind = OutputKind::Outcome;
        advance();
      }
      if (!expect_keyword("to")) {
        recover();
        return;
      }
      if (auto ref = parse_customer_ref()) {
        process.outputs.push_back({label->text, kind, *ref});
        statement_end();
      } else {
        recover();
      }
      return;
    }
    if (at_keyword("tag")) {
      advance();
      std::string key;
      if (at(TokenKind::Identifier) || at(TokenKind::String)) {
        key = cur().text;
        advance();
      } else {
        error_here("tag key");
        recover();
        return;
      }
      if (!expect(TokenKind::Equals, "'='")) {
        recover();
        return;
      }
      const Token* value = expect(TokenKind::String, "tag value");
      if (!value) {
        recover();
        return;
      }
      process.properties[key] = value->text;
      statement_end();
      return;
    }
    error_here(
        "a process property ('category', 'phase', 'owner', 'input', 'output', "
        "'provides', 'uses', 'handles' or 'tag')");
    recover();
  }

  std::optional<CustomerRef> parse_customer_ref() {
    CustomerKind kind;
    std::string_view what;
    if (at_keyword("customer")) {
      kind = CustomerKind::ExternalCustomer;
      what = "external customer";
    } else if (at_keyword("actor")) {
      kind = CustomerKind::InternalActor;
      what = "actor";
    } else if (at_keyword("process")) {
      kind = CustomerKind::InternalProcess;
      what = "process";
    } else {
      error_here("'customer', 'actor' or 'process'");
      return std::nullopt;
    }
    advance();
    const Token* id = expect_identifier(what);
    if (!id) return std::nullopt;
    return CustomerRef{kind, id->text};
  }

  void parse_relation() {
    const Token src = cur();
    advance();
    if (at(TokenKind::TriggerArrow) || at(TokenKind::FlowArrow)) {
      RelationKind kind =
          at(TokenKind::TriggerArrow) ? RelationKind::Trigger : RelationKind::Flow;
      advance();
      const Token* dst = expect_identifier("process");
      if (!dst) {
        recover();
        return;
      }
      draft_.relations.push_back({{kind, src.text, dst->text}, src.span});
      statement_end();
      return;
    }
    RelationKind kind;
    if (at_keyword("contains")) {
      kind = RelationKind::Decomposition;
    } else if (at_keyword("variant-of")) {
      kind = RelationKind::Specialization;
    } else {
      error_here("'->', '~>', 'contains' or 'variant-of'");
      recover();
      return;
    }
    advance();
    while (true) {
      const Token* dst = expect_identifier("process");
      if (!dst) {
        recover();
        return;
      }
      draft_.relations.push_back({{kind, src.text, dst->text}, src.span});
      if (at(TokenKind::Comma)) {
        advance();
        continue;
      }
      break;
    }
    statement_end();
  }

  void parse_group() {
    const Token* name = expect(TokenKind::String, "group name");
    if (!name) {
      recover();
      return;
    }
    Group group;
    group.name = name->text;
    if (at_keyword("by")) {
      advance();
      if (!parse_criterion(group.criterion)) {
        recover();
        return;
      }
    } else if (at_keyword("members")) {
      advance();
      group.criterion.kind = CriterionKind::ExplicitList;
      std::set<std::string> members;
      // A bare `members` clause declares an empty explicit group.
      while (!at(TokenKind::Newline) && !at(TokenKind::RBrace) && !at(TokenKind::EndOfFile)) {
        const Token* id = expect_identifier("process");
        if (!id) {
          recover();
          return;
        }
        members.insert(id->text);
        if (at(TokenKind::Comma)) {
          advance();
          continue;
        }
        break;
      }
      group.explicit_members = std::move(members);
    } else {
      error_here("'by' or 'members'");
      recover();
      return;
    }
    draft_.groups.push_back({std::move(group), name->span});
    statement_end();
  }

  bool parse_criterion(Criterion& criterion) {
    struct Mapping {
      std::string_view keyword;
      CriterionKind kind;
      std::string_view what;
    };
    static constexpr Mapping kMappings[] = {
        {"category", CriterionKind::InCategory, "category"},
        {"phase", CriterionKind::InPhase, "phase"},
        {"owner", CriterionKind::OwnedBy, "actor"},
        {"provides", CriterionKind::Provides, "service"},
        {"uses", CriterionKind::Uses, "object"},
        {"handles", CriterionKind::Handles, "object"},
    };
    for (const Mapping& mapping : kMappings) {
      if (at_keyword(mapping.keyword)) {
        advance();
        const Token* id = expect_identifier(mapping.what);
        if (!id) return false;
        criterion.kind = mapping.kind;
        criterion.id = id->text;
        return true;
      }
    }
    if (at_keyword("tag")) {
      advance();
      if (at(TokenKind::Identifier) || at(TokenKind::String)) {
        criterion.key = cur().text;
        advance();
      } else {
        error_here("tag key");
        return false;
      }
      if (!expect(TokenKind::Equals, "'='")) return false;
      const Token* value = expect(TokenKind::String, "tag value");
      if (!value) return false;
      criterion.kind = CriterionKind::Property;
      criterion.value = value->text;
      return true;
    }
    error_here("a grouping criterion ('category', 'phase', 'owner', 'provides', 'uses', 'handles' or 'tag')");
    return false;
  }

  ParseResult finish() {
    ParseResult result;
    result.diagnostics = std::move(diagnostics_);
    if (result.diagnostics.empty()) result.draft = std::move(draft_);
    return result;
  }

  std::vector<Token> tokens_;
  std::string_view file_;
  std::size_t pos_ = 0;
  MapDraft draft_;
  std::vector<ParseDiagnostic> diagnostics_;
  std::set<std::string> seen_processes_;
  std::set<std::string> seen_ea_;
  std::set<std::string> seen_categories_;
  std::set<std::string> seen_phases_;
};

}  // namespace

ParseResult parse(std::string_view text, std::string_view file) {
  LexResult lexed = tokenize(text, file);
  if (!lexed.ok()) {
    ParseResult result;
    result.diagnostics.push_back(std::move(*lexed.error));
    return result;
  }
  return Parser(std::move(lexed.tokens), file).run();
}

}  // namespace promap
