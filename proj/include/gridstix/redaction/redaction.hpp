#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "gridstix/core/bundle.hpp"
#include "gridstix/schema/registry.hpp"

namespace gridstix::redaction {

struct SharingProfile {
    std::set<std::string> strip_properties = {"latitude", "longitude", "serial-number",
                                              "firmware-version", "street-address"};
    /// Matched through the subtype hierarchy.
    std::set<std::string> pseudonymize_types = {"physical-asset", "ot-device", "supplier"};
    std::set<std::string> preserve_types = {"grid-attack-pattern"};

    static SharingProfile from_json(const Json& doc);
    Json to_json() const;
};

struct RedactionResult {
    core::Bundle bundle;
    /// Original id -> pseudonym. Never embedded in the output bundle.
    std::map<core::StixId, core::StixId> pseudonyms;
};

/// Deterministic privacy-preserving transform: objects of pseudonymized types
/// get ids derived from (key, original id) via a keyed one-way function, all
/// *_ref/*_refs fields are rewritten through the map, stripped properties are
/// removed, and names on pseudonymized objects become "asset-{k}" with k the
/// object's 1-based rank in the original bundle's canonical order. Throws
/// ProfileConflictError and ValidationPreconditionError (the input must
/// validate without errors under `registry`).
RedactionResult redact_bundle(const core::Bundle& bundle, const SharingProfile& profile,
                              std::string_view key,
                              const schema::SchemaRegistry& registry);

/// True iff mapping the original through `pseudonyms` yields the redacted
/// bundle's node types, edge multiset, and untouched non-stripped properties.
/// On divergence returns false and, when given, writes the first divergence
/// into `diagnostic`.
bool verify_topology(const core::Bundle& original, const core::Bundle& redacted,
                     const std::map<core::StixId, core::StixId>& pseudonyms,
                     const SharingProfile& profile = {},
                     std::string* diagnostic = nullptr);

}  // namespace gridstix::redaction
