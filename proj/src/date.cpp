#include "chartml/date.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace chartml {

namespace {

bool is_leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap(year)) return 29;
    return lengths[static_cast<std::size_t>(month - 1)];
}

bool parse_int(std::string_view s, int& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    Date d;
    if (!parse_int(text.substr(0, 4), d.year)) return std::nullopt;
    if (!parse_int(text.substr(5, 2), d.month)) return std::nullopt;
    if (!parse_int(text.substr(8, 2), d.day)) return std::nullopt;
    if (d.month < 1 || d.month > 12) return std::nullopt;
    if (d.day < 1 || d.day > days_in_month(d.year, d.month)) return std::nullopt;
    return d;
}

std::string to_string(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

int weekday(const Date& d) {
    // Sakamoto's method; adjusted so 0 = Monday.
    static constexpr std::array<int, 12> t = {0, 3, 2, 5, 0, 3, 5, 1, 4, 6, 2, 4};
    int y = d.year;
    if (d.month < 3) y -= 1;
    int dow_sun0 =
        (y + y / 4 - y / 100 + y / 400 + t[static_cast<std::size_t>(d.month - 1)] + d.day) % 7;
    return (dow_sun0 + 6) % 7;
}

Date next_day(const Date& d) {
    Date n = d;
    n.day += 1;
    if (n.day > days_in_month(n.year, n.month)) {
        n.day = 1;
        n.month += 1;
        if (n.month > 12) {
            n.month = 1;
            n.year += 1;
        }
    }
    return n;
}

Date next_weekday(const Date& d) {
    Date n = next_day(d);
    while (weekday(n) > 4) n = next_day(n);
    return n;
}

}  // namespace chartml
