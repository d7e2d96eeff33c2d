#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace gridstix::core {

/// UTC instant with millisecond precision. The only accepted textual form is
/// "YYYY-MM-DDTHH:MM:SS.mmmZ"; parse -> str round-trips bit-exactly.
class Timestamp {
public:
    Timestamp() = default;

    static std::optional<Timestamp> parse(std::string_view text);
    static Timestamp from_unix_millis(std::int64_t millis) { return Timestamp(millis); }
    /// System clock, truncated to whole milliseconds.
    static Timestamp now();

    std::int64_t unix_millis() const { return millis_; }
    std::string str() const;

    friend auto operator<=>(const Timestamp&, const Timestamp&) = default;

private:
    explicit Timestamp(std::int64_t millis) : millis_(millis) {}

    std::int64_t millis_ = 0;
};

}  // namespace gridstix::core
