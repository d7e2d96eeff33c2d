#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gridstix/core/object.hpp"

namespace gridstix::core {

/// Transport envelope for a set of STIX objects. Immutable once built;
/// objects are held in canonical order (id, then raw modified string).
class Bundle {
public:
    Bundle() : id_(StixId::generate("bundle")) {}

    /// Parse a UTF-8 document. Throws SyntaxError (malformed JSON, with the
    /// byte offset) or EnvelopeError (envelope violations, with the object
    /// index).
    static Bundle parse(std::string_view text);

    /// Construct from objects with a fresh bundle id.
    static Bundle create(std::vector<StixObject> objects);
    static Bundle create(StixId bundle_id, std::vector<StixObject> objects);

    /// Canonical bytes: sorted property keys, objects sorted by (id, modified),
    /// two-space indent, trailing newline. parse(serialize(b)) == b.
    std::string serialize() const;
    Json to_json() const;

    const StixId& id() const { return id_; }
    const std::vector<StixObject>& objects() const { return objects_; }
    std::size_t size() const { return objects_.size(); }
    bool empty() const { return objects_.empty(); }

    /// Latest version (greatest raw modified) carrying the id, or nullptr.
    const StixObject* find(const StixId& id) const;

    bool operator==(const Bundle& other) const {
        return id_ == other.id_ && to_json() == other.to_json();
    }

private:
    Bundle(StixId id, std::vector<StixObject> objects);

    StixId id_;
    std::vector<StixObject> objects_;
};

// Spec-level operation aliases.
Bundle parse_bundle(std::string_view text);
std::string serialize_bundle(const Bundle& bundle);
StixObject new_object(std::string_view object_type, Json properties,
                      Timestamp at = Timestamp::now());
StixObject make_relationship(std::string_view relationship_type, const StixId& source,
                             const StixId& target, Json properties = Json::object(),
                             Timestamp at = Timestamp::now());

}  // namespace gridstix::core
