#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "gridstix/core/id.hpp"
#include "gridstix/core/timestamp.hpp"

namespace gridstix {
using Json = nlohmann::json;
}

namespace gridstix::core {

/// A STIX 2.1 object: common envelope plus an open property map. The full
/// document is kept verbatim so unknown properties survive a round trip.
class StixObject {
public:
    /// Materialize a parsed JSON object. Enforces the envelope rules:
    /// id/type/spec_version present, id prefix equals the type property,
    /// source_ref/target_ref present exactly on relationship objects.
    /// Throws EnvelopeError; `index` is reported in the message when given.
    static StixObject from_json(Json doc, std::optional<std::size_t> index = {});

    /// Fresh object with a generated id; created == modified == at.
    /// Throws TokenError on an invalid object type.
    static StixObject create(std::string_view object_type, Json properties,
                             Timestamp at = Timestamp::now());

    /// Relationship object carrying relationship_type, source_ref, target_ref.
    /// Throws SelfLoopError when source == target.
    static StixObject create_relationship(std::string_view relationship_type,
                                          const StixId& source, const StixId& target,
                                          Json properties, Timestamp at = Timestamp::now());

    const StixId& id() const { return id_; }
    const std::string& type() const { return id_.object_type(); }
    std::string spec_version() const;
    std::optional<Timestamp> created() const;
    std::optional<Timestamp> modified() const;
    /// Raw "modified" string, "" when absent. ISO-8601 strings order correctly
    /// as bytes, so this is the canonical sort key alongside the id.
    std::string raw_modified() const;

    bool is_relationship() const { return type() == "relationship"; }
    std::optional<StixId> source_ref() const { return ref("source_ref"); }
    std::optional<StixId> target_ref() const { return ref("target_ref"); }
    std::optional<StixId> created_by_ref() const { return ref("created_by_ref"); }
    std::optional<std::string> relationship_type() const;

    const Json& json() const { return doc_; }
    /// Property lookup; nullptr when absent.
    const Json* find(std::string_view property) const;

    bool operator==(const StixObject& other) const { return doc_ == other.doc_; }

private:
    StixObject(StixId id, Json doc) : id_(std::move(id)), doc_(std::move(doc)) {}

    std::optional<StixId> ref(const char* property) const;

    StixId id_;
    Json doc_;
};

}  // namespace gridstix::core
