#include "gridstix/core/timestamp.hpp"

#include <chrono>
#include <cstdio>

namespace gridstix::core {

namespace {

// Civil-calendar conversions (proleptic Gregorian), Hinnant's algorithms.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int yr = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = yr + (m <= 2);
}

bool leap_year(int y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

unsigned days_in_month(int y, unsigned m) {
    static constexpr unsigned lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && leap_year(y)) return 29;
    return lengths[m - 1];
}

bool all_digits(std::string_view s) {
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return !s.empty();
}

int to_int(std::string_view s) {
    int v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

}  // namespace

std::optional<Timestamp> Timestamp::parse(std::string_view text) {
    // YYYY-MM-DDTHH:MM:SS.mmmZ, 24 characters, no other shape accepted.
    if (text.size() != 24) return std::nullopt;
    if (text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
        text[16] != ':' || text[19] != '.' || text[23] != 'Z') {
        return std::nullopt;
    }
    const auto year_s = text.substr(0, 4);
    const auto month_s = text.substr(5, 2);
    const auto day_s = text.substr(8, 2);
    const auto hour_s = text.substr(11, 2);
    const auto min_s = text.substr(14, 2);
    const auto sec_s = text.substr(17, 2);
    const auto ms_s = text.substr(20, 3);
    for (auto part : {year_s, month_s, day_s, hour_s, min_s, sec_s, ms_s}) {
        if (!all_digits(part)) return std::nullopt;
    }
    const int year = to_int(year_s);
    const int month = to_int(month_s);
    const int day = to_int(day_s);
    const int hour = to_int(hour_s);
    const int minute = to_int(min_s);
    const int second = to_int(sec_s);
    const int ms = to_int(ms_s);
    if (month < 1 || month > 12) return std::nullopt;
    if (day < 1 || day > static_cast<int>(days_in_month(year, static_cast<unsigned>(month)))) {
        return std::nullopt;
    }
    if (hour > 23 || minute > 59 || second > 59) return std::nullopt;

    const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month),
                                              static_cast<unsigned>(day));
    const std::int64_t millis =
        ((days * 24 + hour) * 60 + minute) * 60000 + second * 1000 + ms;
    return Timestamp(millis);
}

Timestamp Timestamp::now() {
    using namespace std::chrono;
    const auto ms = duration_cast<milliseconds>(system_clock::now().time_since_epoch());
    return Timestamp(ms.count());
}

std::string Timestamp::str() const {
    std::int64_t days = millis_ / 86400000;
    std::int64_t rem = millis_ % 86400000;
    if (rem < 0) {
        rem += 86400000;
        days -= 1;
    }
    int year;
    unsigned month, day;
    civil_from_days(days, year, month, day);
    const int hour = static_cast<int>(rem / 3600000);
    const int minute = static_cast<int>((rem / 60000) % 60);
    const int second = static_cast<int>((rem / 1000) % 60);
    const int ms = static_cast<int>(rem % 1000);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", year, month, day,
                  hour, minute, second, ms);
    return buf;
}

}  // namespace gridstix::core
