#include "gridstix/validation/validator.hpp"

#include <algorithm>
#include <set>

#include "gridstix/errors.hpp"

namespace gridstix::validation {

using core::Bundle;
using core::StixId;
using core::StixObject;
using core::Timestamp;
using schema::SchemaRegistry;

std::string_view severity_name(Severity s) {
    switch (s) {
        case Severity::error: return "error";
        case Severity::warning: return "warning";
        case Severity::info: return "info";
    }
    return "error";
}

namespace {

class Collector {
public:
    void add(std::string code, Severity severity, std::optional<StixId> id, std::string path,
             std::string message) {
        findings_.push_back({std::move(code), severity, std::move(id), std::move(path),
                             std::move(message)});
    }

    std::vector<Finding> take() && { return std::move(findings_); }

private:
    std::vector<Finding> findings_;
};

void check_structural(const Bundle& bundle, Collector& out) {
    if (!bundle.id().well_formed()) {
        out.add("V1-STRUCT-ID", Severity::error, bundle.id(), "id",
                "bundle id is not a well-formed STIX id");
    }
    for (const auto& obj : bundle.objects()) {
        if (!obj.id().well_formed()) {
            out.add("V1-STRUCT-ID", Severity::error, obj.id(), "id",
                    "id '" + obj.id().str() + "' violates the id grammar");
        }
        for (const char* prop : {"source_ref", "target_ref", "created_by_ref"}) {
            const Json* v = obj.find(prop);
            if (v == nullptr) continue;
            auto ref = StixId::split(v->get<std::string>());
            if (!ref || !ref->well_formed()) {
                out.add("V1-STRUCT-ID", Severity::error, obj.id(), prop,
                        std::string(prop) + " is not a well-formed STIX id");
            }
        }
        if (obj.spec_version() != "2.1") {
            out.add("V1-STRUCT-SPEC-VERSION", Severity::error, obj.id(), "spec_version",
                    "spec_version '" + obj.spec_version() + "' is not '2.1'");
        }
        const auto created = obj.created();
        const auto modified = obj.modified();
        if (!created) {
            out.add("V1-STRUCT-TIMESTAMP", Severity::error, obj.id(), "created",
                    "created is missing or not of the form YYYY-MM-DDTHH:MM:SS.mmmZ");
        }
        if (!modified) {
            out.add("V1-STRUCT-TIMESTAMP", Severity::error, obj.id(), "modified",
                    "modified is missing or not of the form YYYY-MM-DDTHH:MM:SS.mmmZ");
        }
        if (created && modified && *modified < *created) {
            out.add("V1-STRUCT-TIME-ORDER", Severity::error, obj.id(), "modified",
                    "modified predates created");
        }
    }
}

void check_registry(const Bundle& bundle, const SchemaRegistry& registry, Collector& out) {
    for (const auto& obj : bundle.objects()) {
        const auto* descriptor = registry.find(obj.type());
        if (descriptor == nullptr) {
            out.add("V2-REGISTRY-TYPE", Severity::warning, obj.id(), "type",
                    "object type '" + obj.type() + "' is not registered");
        } else {
            for (const auto& spec : registry.flattened_required(obj.type())) {
                const Json* v = obj.find(spec.name);
                if (v == nullptr || v->is_null()) {
                    out.add("V2-REGISTRY-PROPERTY", Severity::error, obj.id(), spec.name,
                            "required property '" + spec.name + "' is missing");
                }
            }
        }
        if (auto rel_type = obj.relationship_type()) {
            if (registry.find_constraint(*rel_type) == nullptr) {
                out.add("V2-REGISTRY-TYPE", Severity::warning, obj.id(), "relationship_type",
                        "relationship type '" + *rel_type + "' is not registered");
            }
        }
    }
}

void check_naming(const Bundle& bundle, Collector& out) {
    for (const auto& obj : bundle.objects()) {
        const bool kebab = core::is_kebab_case(obj.type());
        if (!kebab) {
            out.add("V3-NAMING-KEBAB", Severity::error, obj.id(), "type",
                    "type name '" + obj.type() + "' is not kebab-case");
        }
        if (auto rel_type = obj.relationship_type()) {
            if (!core::is_kebab_case(*rel_type)) {
                out.add("V3-NAMING-KEBAB", Severity::error, obj.id(), "relationship_type",
                        "relationship type '" + *rel_type + "' is not kebab-case");
            }
        }
        const Json* label = obj.find("label");
        if (kebab && label != nullptr && label->is_string()) {
            const std::string expected = core::to_label(obj.type());
            if (label->get<std::string>() != expected) {
                out.add("V3-NAMING-LABEL", Severity::warning, obj.id(), "label",
                        "label '" + label->get<std::string>() + "' should be '" + expected +
                            "'");
            }
        }
    }
}

void check_vocabularies(const Bundle& bundle, const SchemaRegistry& registry,
                        Collector& out) {
    for (const auto& obj : bundle.objects()) {
        if (registry.find(obj.type()) == nullptr) continue;
        for (const auto& spec : registry.flattened_properties(obj.type())) {
            auto vocab = schema::vocabulary_of(spec.semantic_type);
            if (!vocab) continue;
            const Json* v = obj.find(spec.name);
            if (v == nullptr) continue;
            const bool is_list = spec.semantic_type.starts_with("list:");
            auto check_term = [&](const Json& term, const std::string& path) {
                if (!term.is_string()) {
                    out.add("V4-VOCAB-TERM", Severity::warning, obj.id(), path,
                            "vocabulary-typed value is not a string");
                    return;
                }
                if (registry.vocab_check(*vocab, term.get<std::string>()) ==
                    schema::VocabCheck::non_member_open) {
                    out.add("V4-VOCAB-TERM", Severity::warning, obj.id(), path,
                            "'" + term.get<std::string>() + "' is not a listed '" + *vocab +
                                "' term (open vocabulary)");
                }
            };
            if (is_list) {
                if (!v->is_array()) {
                    out.add("V4-VOCAB-TERM", Severity::warning, obj.id(), spec.name,
                            "expected a list of vocabulary terms");
                    continue;
                }
                for (std::size_t i = 0; i < v->size(); ++i) {
                    check_term((*v)[i], spec.name + "[" + std::to_string(i) + "]");
                }
            } else {
                check_term(*v, spec.name);
            }
        }
    }
}

void check_references(const Bundle& bundle, const ValidatorConfig& config, Collector& out) {
    std::set<std::string> known;
    for (const auto& obj : bundle.objects()) known.insert(obj.id().str());
    const Severity severity = config.allow_dangling ? Severity::warning : Severity::error;
    for (const auto& obj : bundle.objects()) {
        for (const char* prop : {"source_ref", "target_ref", "created_by_ref"}) {
            const Json* v = obj.find(prop);
            if (v == nullptr || !v->is_string()) continue;
            if (known.find(v->get<std::string>()) == known.end()) {
                out.add("V5-REF-DANGLING", severity, obj.id(), prop,
                        std::string(prop) + " '" + v->get<std::string>() +
                            "' does not resolve within the bundle");
            }
        }
    }
}

void check_domain_range(const Bundle& bundle, const SchemaRegistry& registry,
                        Collector& out) {
    auto in_union = [&](const std::string& type_name,
                        const std::vector<std::string>& members) {
        return std::any_of(members.begin(), members.end(), [&](const std::string& m) {
            return registry.is_subtype(type_name, m);
        });
    };
    for (const auto& obj : bundle.objects()) {
        if (!obj.is_relationship()) continue;
        auto rel_type = obj.relationship_type();
        if (!rel_type) continue;
        const auto* constraint = registry.find_constraint(*rel_type);
        if (constraint == nullptr) continue;  // open world; V2 already flagged
        struct End {
            const char* path;
            std::optional<StixId> id;
            const std::vector<std::string>* allowed;
        };
        const End ends[] = {{"source_ref", obj.source_ref(), &constraint->allowed_sources},
                            {"target_ref", obj.target_ref(), &constraint->allowed_targets}};
        for (const auto& end : ends) {
            if (!end.id) continue;
            const StixObject* endpoint = bundle.find(*end.id);
            if (endpoint == nullptr) continue;  // dangling; V5's concern
            if (registry.find(endpoint->type()) == nullptr) continue;  // V2's concern
            if (!in_union(endpoint->type(), *end.allowed)) {
                out.add("V6-DOMAIN-RANGE", Severity::error, obj.id(), end.path,
                        "'" + endpoint->type() + "' is outside the " +
                            (end.allowed == &constraint->allowed_sources ? "source"
                                                                         : "target") +
                            " union of '" + *rel_type + "'");
            }
        }
    }
}

void check_connectivity(const Bundle& bundle, const SchemaRegistry& registry,
                        Collector& out) {
    std::set<std::string> participating;
    for (const auto& obj : bundle.objects()) {
        if (!obj.is_relationship()) continue;
        for (const char* prop : {"source_ref", "target_ref"}) {
            const Json* v = obj.find(prop);
            if (v != nullptr && v->is_string()) participating.insert(v->get<std::string>());
        }
    }
    for (const auto& obj : bundle.objects()) {
        if (obj.is_relationship()) continue;
        const auto* descriptor = registry.find(obj.type());
        if (descriptor != nullptr && schema::is_context_module(descriptor->module)) {
            continue;  // contexts attach via properties, not relationship objects
        }
        if (participating.find(obj.id().str()) == participating.end()) {
            out.add("V7-CONNECTIVITY-ISOLATED", Severity::info, obj.id(), "",
                    "object participates in no relationship");
        }
    }
}

}  // namespace

ValidationReport::ValidationReport(std::vector<Finding> findings)
    : findings_(std::move(findings)) {
    std::sort(findings_.begin(), findings_.end(), [](const Finding& a, const Finding& b) {
        const std::string ia = a.object_id ? a.object_id->str() : "";
        const std::string ib = b.object_id ? b.object_id->str() : "";
        return std::tie(ia, a.code, a.path, a.message) <
               std::tie(ib, b.code, b.path, b.message);
    });
}

std::size_t ValidationReport::count(Severity s) const {
    return static_cast<std::size_t>(
        std::count_if(findings_.begin(), findings_.end(),
                      [s](const Finding& f) { return f.severity == s; }));
}

Json ValidationReport::to_json() const {
    Json doc = Json::object();
    Json items = Json::array();
    for (const auto& f : findings_) {
        Json item = Json::object();
        item["code"] = f.code;
        item["severity"] = std::string(severity_name(f.severity));
        if (f.object_id) item["object_id"] = f.object_id->str();
        item["path"] = f.path;
        item["message"] = f.message;
        items.push_back(std::move(item));
    }
    doc["findings"] = std::move(items);
    doc["counts"] = {{"error", count(Severity::error)},
                     {"warning", count(Severity::warning)},
                     {"info", count(Severity::info)}};
    doc["passed"] = passed();
    return doc;
}

std::string ValidationReport::to_text() const {
    std::string out;
    for (const auto& f : findings_) {
        out += severity_name(f.severity);
        out += ' ';
        out += f.code;
        out += ' ';
        out += f.object_id ? f.object_id->str() : "-";
        if (!f.path.empty()) {
            out += ' ';
            out += f.path;
        }
        out += ": ";
        out += f.message;
        out += '\n';
    }
    return out;
}

ValidationReport validate_bundle(const Bundle& bundle, const SchemaRegistry& registry,
                                 const ValidatorConfig& config) {
    Collector out;
    check_structural(bundle, out);
    check_registry(bundle, registry, out);
    check_naming(bundle, out);
    check_vocabularies(bundle, registry, out);
    check_references(bundle, config, out);
    check_domain_range(bundle, registry, out);
    check_connectivity(bundle, registry, out);
    return ValidationReport(std::move(out).take());
}

Bundle merge_bundles(std::span<const Bundle> bundles) {
    if (bundles.empty()) {
        throw Error("merge requires at least one bundle");
    }
    std::map<std::string, StixObject> latest;
    for (const auto& bundle : bundles) {
        for (const auto& obj : bundle.objects()) {
            auto [it, inserted] = latest.emplace(obj.id().str(), obj);
            if (inserted) continue;
            const auto& incumbent = it->second;
            if (obj.raw_modified() > incumbent.raw_modified()) {
                it->second = obj;
            } else if (obj.raw_modified() == incumbent.raw_modified() &&
                       !(obj == incumbent)) {
                throw MergeConflictError("objects with id '" + obj.id().str() +
                                         "' share modified '" + obj.raw_modified() +
                                         "' but differ in content");
            }
        }
    }
    std::vector<StixObject> objects;
    objects.reserve(latest.size());
    for (auto& [id, obj] : latest) objects.push_back(std::move(obj));
    return Bundle::create(bundles.front().id(), std::move(objects));
}

}  // namespace gridstix::validation
