#include "gridstix/schema/registry.hpp"

#include <algorithm>
#include <set>

#include "gridstix/errors.hpp"

namespace gridstix::schema {

namespace {

constexpr std::pair<Module, std::string_view> kModuleNames[] = {
    {Module::assets, "assets"},
    {Module::components, "components"},
    {Module::relationships, "relationships"},
    {Module::attack_patterns, "attack-patterns"},
    {Module::policies, "policies"},
    {Module::events_observables, "events-observables"},
    {Module::nuclear_safeguards, "nuclear-safeguards"},
    {Module::operational_contexts, "operational-contexts"},
    {Module::environmental_contexts, "environmental-contexts"},
    {Module::cyber_contexts, "cyber-contexts"},
    {Module::physical_contexts, "physical-contexts"},
    {Module::vocabularies, "vocabularies"},
};

constexpr std::pair<StixBase, std::string_view> kStixBaseNames[] = {
    {StixBase::infrastructure, "infrastructure"},
    {StixBase::software, "software"},
    {StixBase::attack_pattern, "attack-pattern"},
    {StixBase::relationship, "relationship"},
    {StixBase::observed_data, "observed-data"},
    {StixBase::identity, "identity"},
    {StixBase::grouping, "grouping"},
    {StixBase::none, "none"},
};

constexpr std::pair<ImpactDirection, std::string_view> kDirectionNames[] = {
    {ImpactDirection::forward, "forward"},
    {ImpactDirection::reverse, "reverse"},
    {ImpactDirection::none, "none"},
};

bool valid_base_semantic(std::string_view t) {
    return t == "string" || t == "integer" || t == "number" || t == "fraction" ||
           t == "boolean" || t == "timestamp" || t == "identifier" || t == "map";
}

bool valid_semantic_type(std::string_view t) {
    if (t.starts_with("list:")) t.remove_prefix(5);
    if (t.starts_with("vocab:")) return core::is_kebab_case(t.substr(6));
    return valid_base_semantic(t);
}

std::string req_string(const Json& obj, const char* key, const std::string& context) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        throw RegistryError("registry " + context + ": missing string '" + key + "'");
    }
    return it->get<std::string>();
}

std::vector<PropertySpec> parse_properties(const Json& obj, const char* key,
                                           const std::string& context) {
    std::vector<PropertySpec> specs;
    auto it = obj.find(key);
    if (it == obj.end()) return specs;
    if (!it->is_array()) {
        throw RegistryError("registry " + context + ": '" + key + "' is not an array");
    }
    for (const auto& entry : *it) {
        PropertySpec spec{req_string(entry, "name", context),
                          req_string(entry, "type", context)};
        if (!valid_semantic_type(spec.semantic_type)) {
            throw RegistryError("registry " + context + ": bad semantic type '" +
                                spec.semantic_type + "' for property '" + spec.name + "'");
        }
        specs.push_back(std::move(spec));
    }
    return specs;
}

std::vector<std::string> parse_string_list(const Json& obj, const char* key,
                                           const std::string& context) {
    std::vector<std::string> out;
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_array()) {
        throw RegistryError("registry " + context + ": missing array '" + key + "'");
    }
    for (const auto& v : *it) {
        if (!v.is_string()) {
            throw RegistryError("registry " + context + ": '" + key +
                                "' holds a non-string entry");
        }
        out.push_back(v.get<std::string>());
    }
    return out;
}

}  // namespace

std::string_view module_name(Module m) {
    for (auto [mod, name] : kModuleNames) {
        if (mod == m) return name;
    }
    return "assets";
}

std::optional<Module> module_from_name(std::string_view name) {
    for (auto [mod, n] : kModuleNames) {
        if (n == name) return mod;
    }
    return std::nullopt;
}

bool is_context_module(Module m) {
    return m == Module::operational_contexts || m == Module::environmental_contexts ||
           m == Module::cyber_contexts || m == Module::physical_contexts;
}

std::string_view stix_base_name(StixBase b) {
    for (auto [base, name] : kStixBaseNames) {
        if (base == b) return name;
    }
    return "none";
}

std::optional<StixBase> stix_base_from_name(std::string_view name) {
    for (auto [base, n] : kStixBaseNames) {
        if (n == name) return base;
    }
    return std::nullopt;
}

std::string_view impact_direction_name(ImpactDirection d) {
    for (auto [dir, name] : kDirectionNames) {
        if (dir == d) return name;
    }
    return "none";
}

std::optional<ImpactDirection> impact_direction_from_name(std::string_view name) {
    for (auto [dir, n] : kDirectionNames) {
        if (n == name) return dir;
    }
    return std::nullopt;
}

std::optional<std::string> vocabulary_of(std::string_view semantic_type) {
    std::string_view t = semantic_type;
    if (t.starts_with("list:")) t.remove_prefix(5);
    if (t.starts_with("vocab:")) return std::string(t.substr(6));
    return std::nullopt;
}

bool Vocabulary::contains(std::string_view value) const {
    return std::find(terms.begin(), terms.end(), value) != terms.end();
}

SchemaRegistry SchemaRegistry::load(std::span<const Json> documents) {
    SchemaRegistry reg;
    for (const auto& doc : documents) reg.merge_document(doc);
    reg.validate_closure();
    return reg;
}

SchemaRegistry SchemaRegistry::load(const Json& document) {
    return load(std::span<const Json>(&document, 1));
}

void SchemaRegistry::merge_document(const Json& doc) {
    if (!doc.is_object()) {
        throw RegistryError("registry document root is not an object");
    }
    if (auto it = doc.find("types"); it != doc.end()) {
        for (const auto& entry : *it) {
            TypeDescriptor d;
            d.type_name = req_string(entry, "name", "type");
            const std::string context = "type '" + d.type_name + "'";
            d.label = core::to_label(d.type_name);
            auto mod = module_from_name(req_string(entry, "module", context));
            if (!mod) throw RegistryError("registry " + context + ": unknown module");
            d.module = *mod;
            auto base = stix_base_from_name(req_string(entry, "stix-base", context));
            if (!base) throw RegistryError("registry " + context + ": unknown stix-base");
            d.stix_base = *base;
            if (auto p = entry.find("parent"); p != entry.end() && !p->is_null()) {
                if (!p->is_string()) {
                    throw RegistryError("registry " + context + ": parent is not a string");
                }
                d.parent = p->get<std::string>();
            }
            d.required_properties = parse_properties(entry, "required", context);
            d.optional_properties = parse_properties(entry, "optional", context);
            descriptors_[d.type_name] = std::move(d);
        }
    }
    if (auto it = doc.find("relationships"); it != doc.end()) {
        for (const auto& entry : *it) {
            RelationshipConstraint c;
            c.relationship_type = req_string(entry, "name", "relationship");
            const std::string context = "relationship '" + c.relationship_type + "'";
            if (!core::is_kebab_case(c.relationship_type)) {
                throw RegistryError("registry " + context + ": name is not kebab-case");
            }
            c.allowed_sources = parse_string_list(entry, "sources", context);
            c.allowed_targets = parse_string_list(entry, "targets", context);
            auto dir = impact_direction_from_name(
                req_string(entry, "impact-direction", context));
            if (!dir) throw RegistryError("registry " + context + ": bad impact-direction");
            c.impact_direction = *dir;
            auto amp = entry.find("default-amplification");
            if (amp == entry.end() || !amp->is_number()) {
                throw RegistryError("registry " + context +
                                    ": missing numeric 'default-amplification'");
            }
            c.default_amplification = amp->get<double>();
            constraints_[c.relationship_type] = std::move(c);
        }
    }
    if (auto it = doc.find("vocabularies"); it != doc.end()) {
        for (const auto& entry : *it) {
            Vocabulary v;
            v.name = req_string(entry, "name", "vocabulary");
            const std::string context = "vocabulary '" + v.name + "'";
            if (!core::is_kebab_case(v.name)) {
                throw RegistryError("registry " + context + ": name is not kebab-case");
            }
            v.terms = parse_string_list(entry, "terms", context);
            if (auto open = entry.find("open"); open != entry.end()) {
                v.open = open->get<bool>();
            }
            vocabularies_[v.name] = std::move(v);
        }
    }
}

void SchemaRegistry::validate_closure() const {
    std::set<std::string> labels;
    for (const auto& [name, d] : descriptors_) {
        if (!core::is_kebab_case(name)) {
            throw RegistryError("type name '" + name + "' is not kebab-case");
        }
        if (!labels.insert(d.label).second) {
            throw RegistryError("label '" + d.label + "' collides with another type");
        }
        // Parent chain must resolve and be acyclic.
        std::set<std::string> seen{name};
        const TypeDescriptor* cur = &d;
        while (cur->parent) {
            auto it = descriptors_.find(*cur->parent);
            if (it == descriptors_.end()) {
                throw RegistryError("type '" + name + "' references unknown parent '" +
                                    *cur->parent + "'");
            }
            if (!seen.insert(*cur->parent).second) {
                throw RegistryError("parent cycle through type '" + name + "'");
            }
            cur = &it->second;
        }
        for (const auto* props : {&d.required_properties, &d.optional_properties}) {
            for (const auto& spec : *props) {
                if (auto vocab = vocabulary_of(spec.semantic_type)) {
                    if (vocabularies_.find(*vocab) == vocabularies_.end()) {
                        throw RegistryError("type '" + name + "' property '" + spec.name +
                                            "' references unknown vocabulary '" + *vocab +
                                            "'");
                    }
                }
            }
        }
    }
    for (const auto& [name, c] : constraints_) {
        if (c.allowed_sources.empty() || c.allowed_targets.empty()) {
            throw RegistryError("relationship '" + name + "' has an empty union class");
        }
        if (c.default_amplification < 0.0 || c.default_amplification > 1.0) {
            throw RegistryError("relationship '" + name + "' amplification outside [0,1]");
        }
        for (const auto* members : {&c.allowed_sources, &c.allowed_targets}) {
            for (const auto& member : *members) {
                if (descriptors_.find(member) == descriptors_.end()) {
                    throw RegistryError("relationship '" + name +
                                        "' union references unknown type '" + member + "'");
                }
            }
        }
    }
    for (const auto& [name, v] : vocabularies_) {
        std::set<std::string> unique;
        for (const auto& term : v.terms) {
            if (term.empty()) {
                throw RegistryError("vocabulary '" + name + "' holds an empty term");
            }
            if (!unique.insert(term).second) {
                throw RegistryError("vocabulary '" + name + "' repeats term '" + term + "'");
            }
        }
    }
}

const TypeDescriptor* SchemaRegistry::find(std::string_view type_name) const {
    auto it = descriptors_.find(std::string(type_name));
    return it == descriptors_.end() ? nullptr : &it->second;
}

const RelationshipConstraint* SchemaRegistry::find_constraint(
    std::string_view relationship_type) const {
    auto it = constraints_.find(std::string(relationship_type));
    return it == constraints_.end() ? nullptr : &it->second;
}

const Vocabulary* SchemaRegistry::find_vocabulary(std::string_view name) const {
    auto it = vocabularies_.find(std::string(name));
    return it == vocabularies_.end() ? nullptr : &it->second;
}

const RelationshipConstraint& SchemaRegistry::relationship_constraint(
    std::string_view relationship_type) const {
    const auto* c = find_constraint(relationship_type);
    if (c == nullptr) {
        throw UnknownRelationshipError("unregistered relationship type '" +
                                       std::string(relationship_type) + "'");
    }
    return *c;
}

bool SchemaRegistry::is_subtype(std::string_view a, std::string_view b) const {
    const TypeDescriptor* d = find(a);
    if (d == nullptr) {
        throw UnknownTypeError("unregistered type '" + std::string(a) + "'");
    }
    if (find(b) == nullptr) {
        throw UnknownTypeError("unregistered type '" + std::string(b) + "'");
    }
    while (true) {
        if (d->type_name == b) return true;
        if (!d->parent) return false;
        d = find(*d->parent);  // closure guarantees resolution
    }
}

bool SchemaRegistry::is_subtype_safe(std::string_view a, std::string_view b) const {
    if (find(a) == nullptr || find(b) == nullptr) return false;
    return is_subtype(a, b);
}

VocabCheck SchemaRegistry::vocab_check(std::string_view vocab, std::string_view value) const {
    const Vocabulary* v = find_vocabulary(vocab);
    if (v == nullptr) {
        throw UnknownVocabularyError("unregistered vocabulary '" + std::string(vocab) + "'");
    }
    return v->contains(value) ? VocabCheck::member : VocabCheck::non_member_open;
}

std::vector<PropertySpec> SchemaRegistry::flattened_required(
    std::string_view type_name) const {
    std::vector<PropertySpec> out;
    std::vector<const TypeDescriptor*> chain;
    for (const TypeDescriptor* d = find(type_name); d != nullptr;
         d = d->parent ? find(*d->parent) : nullptr) {
        chain.push_back(d);
    }
    // Root first, deduped by name.
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        for (const auto& spec : (*it)->required_properties) {
            bool present = std::any_of(out.begin(), out.end(), [&](const PropertySpec& s) {
                return s.name == spec.name;
            });
            if (!present) out.push_back(spec);
        }
    }
    return out;
}

std::vector<PropertySpec> SchemaRegistry::flattened_properties(
    std::string_view type_name) const {
    std::vector<PropertySpec> out = flattened_required(type_name);
    std::vector<const TypeDescriptor*> chain;
    for (const TypeDescriptor* d = find(type_name); d != nullptr;
         d = d->parent ? find(*d->parent) : nullptr) {
        chain.push_back(d);
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        for (const auto& spec : (*it)->optional_properties) {
            bool present = std::any_of(out.begin(), out.end(), [&](const PropertySpec& s) {
                return s.name == spec.name;
            });
            if (!present) out.push_back(spec);
        }
    }
    return out;
}

const SchemaRegistry& builtin_registry() {
    static const SchemaRegistry registry =
        SchemaRegistry::load(Json::parse(builtin_registry_document()));
    return registry;
}

}  // namespace gridstix::schema
