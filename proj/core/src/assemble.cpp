#include "promap/assemble.hpp"

#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "promap/lexer.hpp"

namespace promap {

namespace {

class Assembler {
 public:
  explicit Assembler(const MapDraft& draft) : draft_(draft) {}

  AssemblyResult run() {
    collect_declarations();
    check_phase_ordinals();
    check_category_references();
    check_process_references();
    collapse_relations();
    check_relations();
    check_groups();
    if (!diagnostics_.empty()) {
      return {std::nullopt, std::move(diagnostics_)};
    }
    return {build(), {}};
  }

 private:
  void add(std::string code, std::string message, std::vector<std::string> subjects,
           std::optional<SourceSpan> span) {
    diagnostics_.push_back(
        {std::move(code), Severity::Error, std::move(message), std::move(subjects), std::move(span)});
  }

  void check_identifier(const std::string& id, std::string_view what,
                        const std::optional<SourceSpan>& span) {
    if (is_identifier(id)) return;
    std::ostringstream message;
    if (is_keyword(id)) {
      message << "'" << id << "' is a reserved keyword and cannot name a " << what;
    } else {
      message << "ill-formed " << what << " identifier '" << id
              << "' (identifiers start with a letter and contain letters, digits, '_' or '-')";
    }
    add("E-ID", message.str(), {id}, span);
  }

  template <typename T>
  void declare(std::map<std::string, const Spanned<T>*>& table,
               const std::vector<Spanned<T>>& items, std::string_view what) {
    for (const Spanned<T>& item : items) {
      check_identifier(item.value.id, what, item.span);
      auto [it, inserted] = table.emplace(item.value.id, &item);
      if (!inserted) {
        std::ostringstream message;
        message << "duplicate " << what << " identifier '" << item.value.id << "'";
        add("E-DUP", message.str(), {item.value.id}, item.span);
      }
    }
  }

  void collect_declarations() {
    declare(processes_, draft_.processes, "process");
    declare(ea_elements_, draft_.ea_elements, "enterprise architecture element");
    declare(categories_, draft_.categories, "category");
    declare(phases_, draft_.phases, "phase");
  }

  void check_phase_ordinals() {
    std::map<std::uint32_t, std::string> by_ordinal;
    for (const auto& [id, phase] : phases_) {
      if (!phase->value.ordinal) continue;
      auto [it, inserted] = by_ordinal.emplace(*phase->value.ordinal, id);
      if (!inserted) {
        std::ostringstream message;
        message << "duplicate phase ordinal " << *phase->value.ordinal << " (phases '"
                << it->second << "' and '" << id << "')";
        add("E-DUP", message.str(), {it->second, id}, phase->span);
      }
    }
  }

  void check_category_references() {
    for (const auto& [id, category] : categories_) {
      if (!category->value.parent) continue;
      if (!categories_.contains(*category->value.parent)) {
        std::ostringstream message;
        message << "category '" << id << "' references unknown parent category '"
                << *category->value.parent << "'";
        add("E-REF", message.str(), {id, *category->value.parent}, category->span);
      }
    }
  }

  const EAElement* find_ea(const std::string& id) const {
    auto it = ea_elements_.find(id);
    return it == ea_elements_.end() ? nullptr : &it->second->value;
  }

  void require_ea_kind(const std::string& owner_process, const std::string& id, EAKind kind,
                       std::string_view role, const std::optional<SourceSpan>& span) {
    const EAElement* element = find_ea(id);
    if (element == nullptr) {
      std::ostringstream message;
      message << "process '" << owner_process << "' references unknown element '" << id
              << "' as " << role;
      add("E-REF", message.str(), {owner_process, id}, span);
      return;
    }
    if (element->kind != kind) {
      std::ostringstream message;
      message << "process '" << owner_process << "' " << role << " '" << id << "' is a "
              << to_string(element->kind) << ", expected a " << to_string(kind);
      add("E-REF", message.str(), {owner_process, id}, span);
    }
  }

  void check_customer_ref(const std::string& owner_process, const CustomerRef& ref,
                          std::string_view role, const std::optional<SourceSpan>& span) {
    switch (ref.kind) {
      case CustomerKind::ExternalCustomer:
        require_ea_kind(owner_process, ref.id, EAKind::ExternalCustomer, role, span);
        return;
      case CustomerKind::InternalActor:
        require_ea_kind(owner_process, ref.id, EAKind::Actor, role, span);
        return;
      case CustomerKind::InternalProcess:
        if (!processes_.contains(ref.id)) {
          std::ostringstream message;
          message << "process '" << owner_process << "' references unknown process '" << ref.id
                  << "' as " << role;
          add("E-REF", message.str(), {owner_process, ref.id}, span);
          return;
        }
        if (ref.id == owner_process) {
          std::ostringstream message;
          message << "process '" << owner_process << "' names itself as " << role;
          add("E-SELF", message.str(), {owner_process}, span);
        }
        return;
    }
  }

  void check_process_references() {
    for (const auto& [id, entry] : processes_) {
      const Process& process = entry->value;
      const auto& span = entry->span;
      for (const std::string& category : process.categories) {
        if (!categories_.contains(category)) {
          std::ostringstream message;
          message << "process '" << id << "' references unknown category '" << category << "'";
          add("E-REF", message.str(), {id, category}, span);
        }
      }
      for (const std::string& phase : process.phases) {
        if (!phases_.contains(phase)) {
          std::ostringstream message;
          message << "process '" << id << "' references unknown phase '" << phase << "'";
          add("E-REF", message.str(), {id, phase}, span);
        }
      }
      for (const std::string& owner : process.owners) {
        require_ea_kind(id, owner, EAKind::Actor, "owner", span);
      }
      for (const std::string& service : process.provides) {
        require_ea_kind(id, service, EAKind::Service, "provided service", span);
      }
      for (const std::string& object : process.uses) {
        require_ea_kind(id, object, EAKind::Object, "used resource", span);
      }
      for (const std::string& object : process.handles) {
        require_ea_kind(id, object, EAKind::Object, "handled object", span);
      }
      for (const InputSpec& input : process.inputs) {
        if (input.label.empty()) {
          std::ostringstream message;
          message << "process '" << id << "' has an input with an empty label";
          add("E-LABEL", message.str(), {id}, span);
        }
        check_customer_ref(id, input.source, "input source", span);
      }
      for (const OutputSpec& output : process.outputs) {
        if (output.label.empty()) {
          std::ostringstream message;
          message << "process '" << id << "' has an output with an empty label";
          add("E-LABEL", message.str(), {id}, span);
        }
        check_customer_ref(id, output.destination, "output destination", span);
      }
    }
  }

  // Duplicate relations of identical kind and endpoints collapse to the
  // first occurrence.
  void collapse_relations() {
    for (const Spanned<Relation>& relation : draft_.relations) {
      auto key = std::tuple(relation.value.kind, relation.value.from, relation.value.to);
      if (seen_relations_.insert(key).second) {
        relations_.push_back(relation.value);
        if (relation.span) relation_spans_[relations_.size() - 1] = *relation.span;
      }
    }
  }

  void check_relations() {
    for (std::size_t i = 0; i < relations_.size(); ++i) {
      const Relation& relation = relations_[i];
      std::optional<SourceSpan> span;
      if (auto it = relation_spans_.find(i); it != relation_spans_.end()) span = it->second;
      for (const std::string& endpoint : {relation.from, relation.to}) {
        if (!processes_.contains(endpoint)) {
          std::ostringstream message;
          message << to_string(relation.kind) << " relation references unknown process '"
                  << endpoint << "'";
          add("E-REF", message.str(), {endpoint}, span);
        }
      }
      if (relation.from == relation.to) {
        std::ostringstream message;
        message << to_string(relation.kind) << " relation from '" << relation.from
                << "' to itself";
        add("E-SELF", message.str(), {relation.from}, span);
      }
    }
  }

  void check_groups() {
    for (const Spanned<Group>& group : draft_.groups) {
      const Criterion& criterion = group.value.criterion;
      const auto& span = group.span;
      auto missing = [&](std::string_view what, const std::string& id) {
        std::ostringstream message;
        message << "group '" << group.value.name << "' references unknown " << what << " '" << id
                << "'";
        add("E-REF", message.str(), {group.value.name, id}, span);
      };
      switch (criterion.kind) {
        case CriterionKind::InCategory:
          if (!categories_.contains(criterion.id)) missing("category", criterion.id);
          break;
        case CriterionKind::InPhase:
          if (!phases_.contains(criterion.id)) missing("phase", criterion.id);
          break;
        case CriterionKind::OwnedBy: {
          const EAElement* element = find_ea(criterion.id);
          if (element == nullptr || element->kind != EAKind::Actor) missing("actor", criterion.id);
          break;
        }
        case CriterionKind::Provides: {
          const EAElement* element = find_ea(criterion.id);
          if (element == nullptr || element->kind != EAKind::Service)
            missing("service", criterion.id);
          break;
        }
        case CriterionKind::Uses:
        case CriterionKind::Handles: {
          const EAElement* element = find_ea(criterion.id);
          if (element == nullptr || element->kind != EAKind::Object)
            missing("object", criterion.id);
          break;
        }
        case CriterionKind::Property:
          break;
        case CriterionKind::ExplicitList:
          if (group.value.explicit_members) {
            for (const std::string& member : *group.value.explicit_members) {
              if (!processes_.contains(member)) missing("process", member);
            }
          }
          break;
      }
      if (group.value.explicit_members && criterion.kind != CriterionKind::ExplicitList) {
        std::ostringstream message;
        message << "group '" << group.value.name
                << "' carries an explicit member list but its criterion is "
                << to_string(criterion.kind);
        add("E-REF", message.str(), {group.value.name}, span);
      }
    }
  }

  ProcessMap build() {
    ProcessMap map;
    map.name = draft_.name;
    for (const auto& [id, entry] : processes_) {
      map.processes.emplace(id, entry->value);
      if (entry->span) map.sources.declarations.emplace("process:" + id, *entry->span);
    }
    for (const auto& [id, entry] : ea_elements_) {
      EAElement element = entry->value;
      if (element.kind != EAKind::Object) element.object_kind = ObjectKind::Permanent;
      map.ea_elements.emplace(id, std::move(element));
      if (entry->span) map.sources.declarations.emplace("ea:" + id, *entry->span);
    }
    for (const auto& [id, entry] : categories_) {
      map.categories.emplace(id, entry->value);
      if (entry->span) map.sources.declarations.emplace("category:" + id, *entry->span);
    }
    for (const auto& [id, entry] : phases_) {
      map.phases.emplace(id, entry->value);
      if (entry->span) map.sources.declarations.emplace("phase:" + id, *entry->span);
    }
    map.relations = relations_;
    map.sources.relations = relation_spans_;

    // `input ... from process P` inside Q is sugar for Trigger(P, Q);
    // materialize it unless already declared.
    for (const Spanned<Process>& entry : draft_.processes) {
      for (const InputSpec& input : entry.value.inputs) {
        if (input.source.kind != CustomerKind::InternalProcess) continue;
        auto key = std::tuple(RelationKind::Trigger, input.source.id, entry.value.id);
        if (seen_relations_.insert(key).second) {
          map.relations.push_back({RelationKind::Trigger, input.source.id, entry.value.id});
          if (entry.span) map.sources.relations[map.relations.size() - 1] = *entry.span;
        }
      }
    }

    for (const Spanned<Group>& entry : draft_.groups) {
      Group group = entry.value;
      if (group.criterion.kind == CriterionKind::ExplicitList && !group.explicit_members) {
        group.explicit_members.emplace();
      }
      map.groups.push_back(std::move(group));
      if (entry.span) map.sources.groups.emplace(entry.value.name, *entry.span);
    }
    return map;
  }

  const MapDraft& draft_;
  std::vector<Diagnostic> diagnostics_;
  std::map<std::string, const Spanned<Process>*> processes_;
  std::map<std::string, const Spanned<EAElement>*> ea_elements_;
  std::map<std::string, const Spanned<Category>*> categories_;
  std::map<std::string, const Spanned<Phase>*> phases_;
  std::set<std::tuple<RelationKind, std::string, std::string>> seen_relations_;
  std::vector<Relation> relations_;
  std::map<std::size_t, SourceSpan> relation_spans_;
};

}  // namespace

AssemblyResult assemble(const MapDraft& draft) { return Assembler(draft).run(); }

}  // namespace promap
