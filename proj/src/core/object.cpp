#include "gridstix/core/object.hpp"

#include "gridstix/errors.hpp"

namespace gridstix::core {

namespace {

std::string where(std::optional<std::size_t> index) {
    return index ? " (object index " + std::to_string(*index) + ")" : "";
}

const Json* get_member(const Json& doc, const char* key) {
    auto it = doc.find(key);
    return it == doc.end() ? nullptr : &*it;
}

StixId require_ref(const Json& doc, const char* key, std::optional<std::size_t> index) {
    const Json* v = get_member(doc, key);
    if (v == nullptr) {
        throw EnvelopeError(std::string("relationship object missing ") + key + where(index),
                            index);
    }
    if (!v->is_string()) {
        throw EnvelopeError(std::string(key) + " is not a string" + where(index), index);
    }
    auto id = StixId::split(v->get<std::string>());
    if (!id) {
        throw EnvelopeError(std::string(key) + " is not a STIX id: '" +
                                v->get<std::string>() + "'" + where(index),
                            index);
    }
    return *id;
}

}  // namespace

StixObject StixObject::from_json(Json doc, std::optional<std::size_t> index) {
    if (!doc.is_object()) {
        throw EnvelopeError("bundle object is not a JSON object" + where(index), index);
    }
    const Json* id_v = get_member(doc, "id");
    const Json* type_v = get_member(doc, "type");
    const Json* spec_v = get_member(doc, "spec_version");
    if (id_v == nullptr || !id_v->is_string()) {
        throw EnvelopeError("object missing string 'id'" + where(index), index);
    }
    if (type_v == nullptr || !type_v->is_string()) {
        throw EnvelopeError("object missing string 'type'" + where(index), index);
    }
    if (spec_v == nullptr || !spec_v->is_string()) {
        throw EnvelopeError("object missing string 'spec_version'" + where(index), index);
    }
    auto id = StixId::split(id_v->get<std::string>());
    if (!id) {
        throw EnvelopeError("malformed object id '" + id_v->get<std::string>() + "'" +
                                where(index),
                            index);
    }
    if (id->object_type() != type_v->get<std::string>()) {
        throw EnvelopeError("id prefix '" + id->object_type() + "' does not match type '" +
                                type_v->get<std::string>() + "'" + where(index),
                            index);
    }

    const bool relationship = id->object_type() == "relationship";
    if (relationship) {
        require_ref(doc, "source_ref", index);
        require_ref(doc, "target_ref", index);
    } else if (doc.contains("source_ref") || doc.contains("target_ref")) {
        throw EnvelopeError("non-relationship object '" + id->str() +
                                "' carries source_ref/target_ref" + where(index),
                            index);
    }
    if (const Json* cb = get_member(doc, "created_by_ref")) {
        if (!cb->is_string() || !StixId::split(cb->get<std::string>())) {
            throw EnvelopeError("created_by_ref is not a STIX id" + where(index), index);
        }
    }
    return StixObject(std::move(*id), std::move(doc));
}

StixObject StixObject::create(std::string_view object_type, Json properties, Timestamp at) {
    StixId id = StixId::generate(object_type);
    Json doc = properties.is_null() ? Json::object() : std::move(properties);
    if (!doc.is_object()) {
        throw TokenError("properties must be a JSON object");
    }
    doc["id"] = id.str();
    doc["type"] = id.object_type();
    doc["spec_version"] = "2.1";
    doc["created"] = at.str();
    doc["modified"] = at.str();
    return StixObject(std::move(id), std::move(doc));
}

StixObject StixObject::create_relationship(std::string_view relationship_type,
                                           const StixId& source, const StixId& target,
                                           Json properties, Timestamp at) {
    if (!valid_type_token(relationship_type)) {
        throw TokenError("invalid relationship type token: '" +
                         std::string(relationship_type) + "'");
    }
    if (source == target) {
        throw SelfLoopError("relationship '" + std::string(relationship_type) +
                            "' may not relate '" + source.str() + "' to itself");
    }
    Json doc = properties.is_null() ? Json::object() : std::move(properties);
    if (!doc.is_object()) {
        throw TokenError("properties must be a JSON object");
    }
    StixId id = StixId::generate("relationship");
    doc["id"] = id.str();
    doc["type"] = "relationship";
    doc["spec_version"] = "2.1";
    doc["created"] = at.str();
    doc["modified"] = at.str();
    doc["relationship_type"] = std::string(relationship_type);
    doc["source_ref"] = source.str();
    doc["target_ref"] = target.str();
    return StixObject(std::move(id), std::move(doc));
}

std::string StixObject::spec_version() const {
    const Json* v = find("spec_version");
    return v != nullptr && v->is_string() ? v->get<std::string>() : std::string();
}

std::optional<Timestamp> StixObject::created() const {
    const Json* v = find("created");
    if (v == nullptr || !v->is_string()) return std::nullopt;
    return Timestamp::parse(v->get<std::string>());
}

std::optional<Timestamp> StixObject::modified() const {
    const Json* v = find("modified");
    if (v == nullptr || !v->is_string()) return std::nullopt;
    return Timestamp::parse(v->get<std::string>());
}

std::string StixObject::raw_modified() const {
    const Json* v = find("modified");
    return v != nullptr && v->is_string() ? v->get<std::string>() : std::string();
}

std::optional<std::string> StixObject::relationship_type() const {
    const Json* v = find("relationship_type");
    if (v == nullptr || !v->is_string()) return std::nullopt;
    return v->get<std::string>();
}

const Json* StixObject::find(std::string_view property) const {
    auto it = doc_.find(property);
    return it == doc_.end() ? nullptr : &*it;
}

std::optional<StixId> StixObject::ref(const char* property) const {
    const Json* v = find(property);
    if (v == nullptr || !v->is_string()) return std::nullopt;
    return StixId::split(v->get<std::string>());
}

}  // namespace gridstix::core
