#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridstix/core/bundle.hpp"
#include "gridstix/schema/registry.hpp"

namespace gridstix::validation {

enum class Severity { error, warning, info };

std::string_view severity_name(Severity s);

// Closed finding catalog.
//
//   V1-STRUCT-ID             error    malformed id (token or uuid), incl. *_ref values
//   V1-STRUCT-TIMESTAMP      error    created/modified missing or not YYYY-MM-DDTHH:MM:SS.mmmZ
//   V1-STRUCT-SPEC-VERSION   error    spec_version != "2.1"
//   V1-STRUCT-TIME-ORDER     error    modified < created
//   V2-REGISTRY-TYPE         warning  object type or relationship_type unregistered
//   V2-REGISTRY-PROPERTY     error    registered type missing a required property
//   V3-NAMING-KEBAB          error    type name or relationship_type not kebab-case
//   V3-NAMING-LABEL          warning  label property != to_label(type)
//   V4-VOCAB-TERM            warning  vocabulary-typed property holds a non-member value
//   V5-REF-DANGLING          error*   ref unresolvable in the bundle (*warning with allow_dangling)
//   V6-DOMAIN-RANGE          error    relationship endpoint type outside the union class
//   V7-CONNECTIVITY-ISOLATED info     non-relationship, non-context object in no relationship

struct Finding {
    std::string code;
    Severity severity = Severity::error;
    std::optional<core::StixId> object_id;
    std::string path;
    std::string message;
};

struct ValidatorConfig {
    bool allow_dangling = false;
};

class ValidationReport {
public:
    explicit ValidationReport(std::vector<Finding> findings);

    const std::vector<Finding>& findings() const { return findings_; }
    std::size_t count(Severity s) const;
    bool passed() const { return count(Severity::error) == 0; }

    Json to_json() const;
    /// Line-oriented rendering: "SEVERITY CODE object_id: message".
    std::string to_text() const;

private:
    std::vector<Finding> findings_;
};

/// Run stages V1-V7 and aggregate findings. Never throws on content faults;
/// output is deterministic for identical inputs.
ValidationReport validate_bundle(const core::Bundle& bundle,
                                 const schema::SchemaRegistry& registry,
                                 const ValidatorConfig& config = {});

/// Union of objects; on a shared id the later `modified` wins. Same id and
/// modified with different content throws MergeConflictError. The result
/// keeps the first bundle's id.
core::Bundle merge_bundles(std::span<const core::Bundle> bundles);

}  // namespace gridstix::validation
