#include "gridstix/core/bundle.hpp"

#include <algorithm>

#include "gridstix/errors.hpp"

namespace gridstix::core {

namespace {

bool canonical_less(const StixObject& a, const StixObject& b) {
    const std::string sa = a.id().str();
    const std::string sb = b.id().str();
    if (sa != sb) return sa < sb;
    return a.raw_modified() < b.raw_modified();
}

}  // namespace

Bundle::Bundle(StixId id, std::vector<StixObject> objects)
    : id_(std::move(id)), objects_(std::move(objects)) {
    std::stable_sort(objects_.begin(), objects_.end(), canonical_less);
    // Identical duplicates collapse; same (id, modified) with different
    // content is an integrity fault.
    std::vector<StixObject> unique;
    unique.reserve(objects_.size());
    for (auto& obj : objects_) {
        if (!unique.empty() && unique.back().id() == obj.id() &&
            unique.back().raw_modified() == obj.raw_modified()) {
            if (unique.back() == obj) continue;
            throw EnvelopeError("two objects share id '" + obj.id().str() +
                                "' and modified '" + obj.raw_modified() +
                                "' with different content");
        }
        unique.push_back(std::move(obj));
    }
    objects_ = std::move(unique);
}

Bundle Bundle::parse(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SyntaxError(e.what(), e.byte);
    }
    if (!doc.is_object()) {
        throw EnvelopeError("document root is not an object");
    }
    auto type_it = doc.find("type");
    auto id_it = doc.find("id");
    if (type_it == doc.end() || !type_it->is_string() || *type_it != "bundle") {
        throw EnvelopeError("document type is not 'bundle'");
    }
    if (id_it == doc.end() || !id_it->is_string()) {
        throw EnvelopeError("bundle missing string 'id'");
    }
    auto id = StixId::split(id_it->get<std::string>());
    if (!id || id->object_type() != "bundle") {
        throw EnvelopeError("bundle id '" + id_it->get<std::string>() +
                            "' does not have object type 'bundle'");
    }

    std::vector<StixObject> objects;
    if (auto objs_it = doc.find("objects"); objs_it != doc.end()) {
        if (!objs_it->is_array()) {
            throw EnvelopeError("'objects' is not an array");
        }
        objects.reserve(objs_it->size());
        for (std::size_t i = 0; i < objs_it->size(); ++i) {
            objects.push_back(StixObject::from_json((*objs_it)[i], i));
        }
    }
    return Bundle(std::move(*id), std::move(objects));
}

Bundle Bundle::create(std::vector<StixObject> objects) {
    return Bundle(StixId::generate("bundle"), std::move(objects));
}

Bundle Bundle::create(StixId bundle_id, std::vector<StixObject> objects) {
    if (bundle_id.object_type() != "bundle") {
        throw EnvelopeError("bundle id must have object type 'bundle', got '" +
                            bundle_id.object_type() + "'");
    }
    return Bundle(std::move(bundle_id), std::move(objects));
}

Json Bundle::to_json() const {
    Json doc = Json::object();
    doc["type"] = "bundle";
    doc["id"] = id_.str();
    Json objs = Json::array();
    for (const auto& obj : objects_) objs.push_back(obj.json());
    doc["objects"] = std::move(objs);
    return doc;
}

std::string Bundle::serialize() const { return to_json().dump(2) + "\n"; }

const StixObject* Bundle::find(const StixId& id) const {
    const StixObject* found = nullptr;
    for (const auto& obj : objects_) {
        if (obj.id() == id) found = &obj;  // canonical order: last wins = latest
    }
    return found;
}

Bundle parse_bundle(std::string_view text) { return Bundle::parse(text); }

std::string serialize_bundle(const Bundle& bundle) { return bundle.serialize(); }

StixObject new_object(std::string_view object_type, Json properties, Timestamp at) {
    return StixObject::create(object_type, std::move(properties), at);
}

StixObject make_relationship(std::string_view relationship_type, const StixId& source,
                             const StixId& target, Json properties, Timestamp at) {
    return StixObject::create_relationship(relationship_type, source, target,
                                           std::move(properties), at);
}

}  // namespace gridstix::core
