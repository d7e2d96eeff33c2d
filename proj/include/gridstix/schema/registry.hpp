#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridstix/core/object.hpp"

namespace gridstix::schema {

enum class Module {
    assets,
    components,
    relationships,
    attack_patterns,
    policies,
    events_observables,
    nuclear_safeguards,
    operational_contexts,
    environmental_contexts,
    cyber_contexts,
    physical_contexts,
    vocabularies,
};

std::string_view module_name(Module m);
std::optional<Module> module_from_name(std::string_view name);
bool is_context_module(Module m);

/// STIX 2.1 base object a grid type extends.
enum class StixBase {
    infrastructure,
    software,
    attack_pattern,
    relationship,
    observed_data,
    identity,
    grouping,
    none,
};

std::string_view stix_base_name(StixBase b);
std::optional<StixBase> stix_base_from_name(std::string_view name);

/// Whether compromise propagates along the declared edge (forward),
/// against it (reverse), or not at all.
enum class ImpactDirection { forward, reverse, none };

std::string_view impact_direction_name(ImpactDirection d);
std::optional<ImpactDirection> impact_direction_from_name(std::string_view name);

/// Property name plus a semantic type. Semantic type grammar:
///   string | integer | number | fraction | boolean | timestamp |
///   identifier | map | list:<base> | vocab:<name> | list:vocab:<name>
struct PropertySpec {
    std::string name;
    std::string semantic_type;

    bool operator==(const PropertySpec&) const = default;
};

/// Vocabulary name referenced by a semantic type, if any.
std::optional<std::string> vocabulary_of(std::string_view semantic_type);

struct TypeDescriptor {
    std::string type_name;
    std::string label;  // type_name with hyphens replaced by underscores
    Module module = Module::assets;
    std::optional<std::string> parent;
    StixBase stix_base = StixBase::none;
    std::vector<PropertySpec> required_properties;
    std::vector<PropertySpec> optional_properties;
};

struct RelationshipConstraint {
    std::string relationship_type;
    std::vector<std::string> allowed_sources;  // union class
    std::vector<std::string> allowed_targets;  // union class
    ImpactDirection impact_direction = ImpactDirection::none;
    double default_amplification = 0.0;
};

struct Vocabulary {
    std::string name;
    std::vector<std::string> terms;  // unique, non-empty, case-sensitive
    bool open = true;

    bool contains(std::string_view value) const;
};

enum class VocabCheck { member, non_member_open };

/// The Grid-STIX taxonomy: type hierarchy, property requirements,
/// relationship domain/range unions, vocabularies. Immutable once loaded;
/// construction runs a full closure self-check.
class SchemaRegistry {
public:
    /// Load from declarative documents; later documents add to or replace
    /// entries from earlier ones. Throws RegistryError on closure faults.
    static SchemaRegistry load(std::span<const Json> documents);
    static SchemaRegistry load(const Json& document);

    const TypeDescriptor* find(std::string_view type_name) const;
    const RelationshipConstraint* find_constraint(std::string_view relationship_type) const;
    const Vocabulary* find_vocabulary(std::string_view name) const;

    /// Throwing accessor. UnknownRelationshipError when unregistered.
    const RelationshipConstraint& relationship_constraint(
        std::string_view relationship_type) const;

    /// True iff b is reachable from a by parent links (reflexive).
    /// Throws UnknownTypeError when either side is unregistered.
    bool is_subtype(std::string_view a, std::string_view b) const;
    /// Like is_subtype but false for unregistered types.
    bool is_subtype_safe(std::string_view a, std::string_view b) const;

    /// Throws UnknownVocabularyError when the vocabulary is unregistered.
    VocabCheck vocab_check(std::string_view vocab, std::string_view value) const;

    /// Required properties flattened through the parent chain (root first).
    std::vector<PropertySpec> flattened_required(std::string_view type_name) const;
    /// Required + optional flattened, required entries first.
    std::vector<PropertySpec> flattened_properties(std::string_view type_name) const;

    const std::map<std::string, TypeDescriptor>& descriptors() const { return descriptors_; }
    const std::map<std::string, RelationshipConstraint>& constraints() const {
        return constraints_;
    }
    const std::map<std::string, Vocabulary>& vocabularies() const { return vocabularies_; }

private:
    void merge_document(const Json& doc);
    void validate_closure() const;

    std::map<std::string, TypeDescriptor> descriptors_;
    std::map<std::string, RelationshipConstraint> constraints_;
    std::map<std::string, Vocabulary> vocabularies_;
};

/// The shipped Grid-STIX registry.
const SchemaRegistry& builtin_registry();

/// Declarative source of the shipped registry (the data table behind
/// builtin_registry, also the reference for override files).
std::string_view builtin_registry_document();

}  // namespace gridstix::schema
