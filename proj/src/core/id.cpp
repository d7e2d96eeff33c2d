#include "gridstix/core/id.hpp"

#include <cctype>
#include <random>

#include "gridstix/errors.hpp"

namespace gridstix::core {

namespace {

bool lower_alpha(char c) { return c >= 'a' && c <= 'z'; }
bool digit(char c) { return c >= '0' && c <= '9'; }
bool lower_hex(char c) { return digit(c) || (c >= 'a' && c <= 'f'); }

std::mt19937_64& rng() {
    thread_local std::mt19937_64 engine = [] {
        std::random_device rd;
        std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
        return std::mt19937_64(seq);
    }();
    return engine;
}

}  // namespace

bool valid_type_token(std::string_view token) {
    if (token.size() < 2) return false;
    if (!lower_alpha(token.front())) return false;
    if (!lower_alpha(token.back()) && !digit(token.back())) return false;
    for (char c : token) {
        if (!lower_alpha(c) && !digit(c) && c != '-') return false;
    }
    return true;
}

bool valid_uuid(std::string_view uuid) {
    static constexpr std::size_t groups[] = {8, 4, 4, 4, 12};
    std::size_t pos = 0;
    for (std::size_t g = 0; g < 5; ++g) {
        if (g > 0) {
            if (pos >= uuid.size() || uuid[pos] != '-') return false;
            ++pos;
        }
        for (std::size_t i = 0; i < groups[g]; ++i, ++pos) {
            if (pos >= uuid.size() || !lower_hex(uuid[pos])) return false;
        }
    }
    return pos == uuid.size();
}

bool is_kebab_case(std::string_view name) {
    if (name.empty() || !lower_alpha(name.front())) return false;
    bool prev_hyphen = false;
    for (char c : name) {
        if (c == '-') {
            if (prev_hyphen) return false;
            prev_hyphen = true;
        } else if (lower_alpha(c) || digit(c)) {
            prev_hyphen = false;
        } else {
            return false;
        }
    }
    return !prev_hyphen;
}

std::string to_label(std::string_view kebab_name) {
    if (!is_kebab_case(kebab_name)) {
        throw TokenError("not a kebab-case name: '" + std::string(kebab_name) + "'");
    }
    std::string label(kebab_name);
    for (char& c : label) {
        if (c == '-') c = '_';
    }
    return label;
}

StixId StixId::make(std::string_view object_type, std::string_view uuid) {
    if (!valid_type_token(object_type)) {
        throw TokenError("invalid object type token: '" + std::string(object_type) + "'");
    }
    if (!valid_uuid(uuid)) {
        throw TokenError("invalid uuid: '" + std::string(uuid) + "'");
    }
    return StixId(std::string(object_type), std::string(uuid));
}

StixId StixId::generate(std::string_view object_type) {
    std::uint64_t hi = rng()();
    std::uint64_t lo = rng()();
    unsigned char bytes[16];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(hi >> (8 * i));
    for (int i = 0; i < 8; ++i) bytes[8 + i] = static_cast<unsigned char>(lo >> (8 * i));
    bytes[6] = static_cast<unsigned char>((bytes[6] & 0x0F) | 0x40);  // version 4
    bytes[8] = static_cast<unsigned char>((bytes[8] & 0x3F) | 0x80);  // variant 10xx

    static constexpr char hex[] = "0123456789abcdef";
    std::string uuid;
    uuid.reserve(36);
    for (int i = 0; i < 16; ++i) {
        if (i == 4 || i == 6 || i == 8 || i == 10) uuid.push_back('-');
        uuid.push_back(hex[bytes[i] >> 4]);
        uuid.push_back(hex[bytes[i] & 0x0F]);
    }
    return make(object_type, uuid);
}

std::optional<StixId> StixId::split(std::string_view text) {
    auto at = text.rfind("--");
    if (at == std::string_view::npos || at == 0 || at + 2 >= text.size()) {
        return std::nullopt;
    }
    return StixId(std::string(text.substr(0, at)), std::string(text.substr(at + 2)));
}

std::optional<StixId> StixId::parse(std::string_view text) {
    auto id = split(text);
    if (!id || !id->well_formed()) return std::nullopt;
    return id;
}

}  // namespace gridstix::core
