#include "fxnet/dates.hpp"

#include <cstdio>

#include "fxnet/error.hpp"

namespace fxnet::dates {

// Howard Hinnant's civil-date algorithms.
long days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

void civil_from_days(long z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long yr = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yr) + (m <= 2);
}

namespace {

bool digits(std::string_view s) {
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return !s.empty();
}

bool split_iso(std::string_view s, int& y, unsigned& m, unsigned& d) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    if (!digits(s.substr(0, 4)) || !digits(s.substr(5, 2)) || !digits(s.substr(8, 2)))
        return false;
    y = (s[0] - '0') * 1000 + (s[1] - '0') * 100 + (s[2] - '0') * 10 + (s[3] - '0');
    m = static_cast<unsigned>((s[5] - '0') * 10 + (s[6] - '0'));
    d = static_cast<unsigned>((s[8] - '0') * 10 + (s[9] - '0'));
    return true;
}

} // namespace

bool is_valid_iso(std::string_view s) {
    int y;
    unsigned m, d;
    if (!split_iso(s, y, m, d)) return false;
    if (m < 1 || m > 12 || d < 1) return false;
    // round-trip check also covers month lengths and leap days
    long z = days_from_civil(y, m, d);
    int y2;
    unsigned m2, d2;
    civil_from_days(z, y2, m2, d2);
    return y2 == y && m2 == m && d2 == d;
}

long parse_iso(std::string_view s) {
    int y;
    unsigned m, d;
    if (!split_iso(s, y, m, d) || !is_valid_iso(s))
        throw ParseError("invalid ISO-8601 date '" + std::string(s) + "'");
    return days_from_civil(y, m, d);
}

std::string format_iso(long days_since_epoch) {
    int y;
    unsigned m, d;
    civil_from_days(days_since_epoch, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, d);
    return buf;
}

bool is_weekday(long days_since_epoch) {
    // 1970-01-01 was a Thursday (weekday index 3 with Monday = 0).
    long wd = (days_since_epoch % 7 + 7 + 3) % 7;
    return wd < 5;
}

std::vector<std::string> weekday_sequence(std::string_view start_iso, int count) {
    long day = parse_iso(start_iso);
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(count > 0 ? count : 0));
    while (static_cast<int>(out.size()) < count) {
        if (is_weekday(day)) out.push_back(format_iso(day));
        ++day;
    }
    return out;
}

} // namespace fxnet::dates
