#include "gridstix/redaction/redaction.hpp"

#include <openssl/hmac.h>

#include <algorithm>
#include <map>

#include "gridstix/errors.hpp"
#include "gridstix/validation/validator.hpp"

namespace gridstix::redaction {

using core::Bundle;
using core::StixId;
using core::StixObject;

namespace {

std::set<std::string> string_set(const Json& doc, const char* key) {
    std::set<std::string> out;
    auto it = doc.find(key);
    if (it == doc.end()) return out;
    for (const auto& v : *it) {
        if (v.is_string()) out.insert(v.get<std::string>());
    }
    return out;
}

Json string_list(const std::set<std::string>& values) {
    Json list = Json::array();
    for (const auto& v : values) list.push_back(v);
    return list;
}

/// Keyed one-way derivation: HMAC-SHA256(key, text), truncated to a
/// well-formed version-4 UUID. Stable across releases; test vectors live in
/// tests/fixtures/pseudonym_vectors.json.
std::string derive_uuid(std::string_view key, std::string_view text) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int digest_len = 0;
    HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()),
         reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest,
         &digest_len);
    digest[6] = static_cast<unsigned char>((digest[6] & 0x0F) | 0x40);
    digest[8] = static_cast<unsigned char>((digest[8] & 0x3F) | 0x80);
    static constexpr char hex[] = "0123456789abcdef";
    std::string uuid;
    uuid.reserve(36);
    for (int i = 0; i < 16; ++i) {
        if (i == 4 || i == 6 || i == 8 || i == 10) uuid.push_back('-');
        uuid.push_back(hex[digest[i] >> 4]);
        uuid.push_back(hex[digest[i] & 0x0F]);
    }
    return uuid;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

/// Rewrite every *_ref / *_refs property through the pseudonym map.
void rewrite_refs(Json& doc, const std::map<StixId, StixId>& pseudonyms) {
    auto mapped = [&](const std::string& text) -> std::string {
        if (auto id = StixId::split(text)) {
            auto it = pseudonyms.find(*id);
            if (it != pseudonyms.end()) return it->second.str();
        }
        return text;
    };
    for (auto& [key, value] : doc.items()) {
        if (ends_with(key, "_ref") && value.is_string()) {
            value = mapped(value.get<std::string>());
        } else if (ends_with(key, "_refs") && value.is_array()) {
            for (auto& entry : value) {
                if (entry.is_string()) entry = mapped(entry.get<std::string>());
            }
        }
    }
}

}  // namespace

SharingProfile SharingProfile::from_json(const Json& doc) {
    SharingProfile profile;
    if (!doc.is_object()) {
        throw ProfileConflictError("sharing profile is not a JSON object");
    }
    if (doc.contains("strip-properties")) {
        profile.strip_properties = string_set(doc, "strip-properties");
    }
    if (doc.contains("pseudonymize-types")) {
        profile.pseudonymize_types = string_set(doc, "pseudonymize-types");
    }
    if (doc.contains("preserve-types")) {
        profile.preserve_types = string_set(doc, "preserve-types");
    }
    return profile;
}

Json SharingProfile::to_json() const {
    Json doc = Json::object();
    doc["strip-properties"] = string_list(strip_properties);
    doc["pseudonymize-types"] = string_list(pseudonymize_types);
    doc["preserve-types"] = string_list(preserve_types);
    return doc;
}

RedactionResult redact_bundle(const Bundle& bundle, const SharingProfile& profile,
                              std::string_view key,
                              const schema::SchemaRegistry& registry) {
    for (const auto& t : profile.pseudonymize_types) {
        if (profile.preserve_types.count(t)) {
            throw ProfileConflictError("type '" + t +
                                       "' is both pseudonymized and preserved");
        }
    }
    auto in_family = [&](const std::string& type_name, const std::set<std::string>& family) {
        return std::any_of(family.begin(), family.end(), [&](const std::string& f) {
            return registry.is_subtype_safe(type_name, f);
        });
    };
    for (const auto& [name, descriptor] : registry.descriptors()) {
        if (in_family(name, profile.pseudonymize_types) &&
            in_family(name, profile.preserve_types)) {
            throw ProfileConflictError("registered type '" + name +
                                       "' falls under both pseudonymized and preserved "
                                       "families");
        }
    }
    const auto report = validation::validate_bundle(bundle, registry);
    if (!report.passed()) {
        throw ValidationPreconditionError(
            "bundle must validate without errors before redaction");
    }

    auto pseudonymized = [&](const StixObject& obj) {
        return !in_family(obj.type(), profile.preserve_types) &&
               in_family(obj.type(), profile.pseudonymize_types);
    };

    // Map and ranks over distinct ids in canonical order.
    RedactionResult result;
    std::map<StixId, std::size_t> rank;
    for (const auto& obj : bundle.objects()) {
        if (!pseudonymized(obj) || result.pseudonyms.count(obj.id())) continue;
        result.pseudonyms[obj.id()] =
            StixId::make(obj.type(), derive_uuid(key, obj.id().str()));
        rank[obj.id()] = rank.size() + 1;
    }

    std::vector<StixObject> objects;
    objects.reserve(bundle.size());
    for (const auto& obj : bundle.objects()) {
        Json doc = obj.json();
        auto mapping = result.pseudonyms.find(obj.id());
        if (mapping != result.pseudonyms.end()) {
            doc["id"] = mapping->second.str();
        }
        rewrite_refs(doc, result.pseudonyms);
        for (const auto& prop : profile.strip_properties) doc.erase(prop);
        if (mapping != result.pseudonyms.end() && doc.contains("name")) {
            doc["name"] = "asset-" + std::to_string(rank[obj.id()]);
        }
        objects.push_back(StixObject::from_json(std::move(doc)));
    }
    const StixId bundle_id = StixId::make("bundle", derive_uuid(key, bundle.id().str()));
    result.bundle = Bundle::create(bundle_id, std::move(objects));
    return result;
}

namespace {

void diverge(std::string* diagnostic, const std::string& message) {
    if (diagnostic != nullptr && diagnostic->empty()) *diagnostic = message;
}

}  // namespace

bool verify_topology(const Bundle& original, const Bundle& redacted,
                     const std::map<StixId, StixId>& pseudonyms,
                     const SharingProfile& profile, std::string* diagnostic) {
    auto mapped = [&](const StixId& id) {
        auto it = pseudonyms.find(id);
        return it == pseudonyms.end() ? id : it->second;
    };

    if (original.size() != redacted.size()) {
        diverge(diagnostic, "object counts differ");
        return false;
    }

    // Edge multiset: (relationship type, mapped source, mapped target).
    using EdgeKey = std::tuple<std::string, std::string, std::string>;
    std::multiset<EdgeKey> expected_edges, actual_edges;
    for (const auto& obj : original.objects()) {
        if (!obj.is_relationship()) continue;
        expected_edges.insert({obj.relationship_type().value_or(""),
                               mapped(*obj.source_ref()).str(),
                               mapped(*obj.target_ref()).str()});
    }
    for (const auto& obj : redacted.objects()) {
        if (!obj.is_relationship()) continue;
        actual_edges.insert({obj.relationship_type().value_or(""), obj.source_ref()->str(),
                             obj.target_ref()->str()});
    }
    if (expected_edges != actual_edges) {
        diverge(diagnostic, "edge multisets differ");
        return false;
    }

    std::map<std::pair<std::string, std::string>, const StixObject*> redacted_index;
    for (const auto& obj : redacted.objects()) {
        redacted_index[{obj.id().str(), obj.raw_modified()}] = &obj;
    }

    for (const auto& obj : original.objects()) {
        const bool was_pseudonymized = pseudonyms.count(obj.id()) > 0;
        const StixId target_id = mapped(obj.id());
        auto it = redacted_index.find({target_id.str(), obj.raw_modified()});
        if (it == redacted_index.end()) {
            diverge(diagnostic, "object '" + obj.id().str() +
                                    "' has no counterpart under id '" + target_id.str() +
                                    "'");
            return false;
        }
        const StixObject& counterpart = *it->second;
        if (counterpart.type() != obj.type()) {
            diverge(diagnostic, "object '" + obj.id().str() + "' changed type");
            return false;
        }
        Json expected = obj.json();
        expected["id"] = target_id.str();
        rewrite_refs(expected, pseudonyms);
        Json actual = counterpart.json();
        for (const auto& prop : profile.strip_properties) {
            expected.erase(prop);
            actual.erase(prop);
        }
        if (was_pseudonymized) {
            expected.erase("name");
            actual.erase("name");
        }
        if (expected != actual) {
            diverge(diagnostic, "object '" + obj.id().str() +
                                    "' diverges beyond stripped properties");
            return false;
        }
    }
    return true;
}

}  // namespace gridstix::redaction
