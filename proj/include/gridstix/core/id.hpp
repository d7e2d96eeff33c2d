#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace gridstix::core {

/// Lowercase type token per the STIX id grammar: starts with a letter,
/// ends with a letter or digit, hyphens and digits in between, length >= 2.
bool valid_type_token(std::string_view token);

/// 8-4-4-4-12 lowercase hex. Any UUID version is accepted.
bool valid_uuid(std::string_view uuid);

/// Naming-convention check, stricter than the id token grammar:
/// lowercase alphanumeric words joined by single hyphens.
bool is_kebab_case(std::string_view name);

/// "world" -> "world"; "feeds-power-to" -> "feeds_power_to".
/// Throws TokenError when the input is not kebab-case.
std::string to_label(std::string_view kebab_name);

/// STIX identifier, textual form "{object-type}--{uuid}".
class StixId {
public:
    StixId() = default;

    /// Strict construction. Throws TokenError on a bad token or uuid.
    static StixId make(std::string_view object_type, std::string_view uuid);

    /// Strict construction with a fresh version-4 uuid.
    static StixId generate(std::string_view object_type);

    /// Split "type--uuid" at the last "--". Only requires non-empty halves;
    /// callers that need full validity check well_formed().
    static std::optional<StixId> split(std::string_view text);

    /// split() + well_formed().
    static std::optional<StixId> parse(std::string_view text);

    const std::string& object_type() const { return object_type_; }
    const std::string& uuid() const { return uuid_; }
    std::string str() const { return object_type_ + "--" + uuid_; }
    bool empty() const { return object_type_.empty() && uuid_.empty(); }

    bool well_formed() const { return valid_type_token(object_type_) && valid_uuid(uuid_); }

    friend auto operator<=>(const StixId&, const StixId&) = default;

private:
    StixId(std::string type, std::string uuid)
        : object_type_(std::move(type)), uuid_(std::move(uuid)) {}

    std::string object_type_;
    std::string uuid_;
};

}  // namespace gridstix::core
