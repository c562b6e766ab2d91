#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace chartml {

// Calendar day. Comparison is lexicographic (year, month, day), which matches
// chronological order.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;
};

// Parses "YYYY-MM-DD". Returns nullopt on any malformation, including
// out-of-range month/day.
std::optional<Date> parse_date(std::string_view text);

// Formats as "YYYY-MM-DD".
std::string to_string(const Date& d);

// Day of week, 0 = Monday .. 6 = Sunday.
int weekday(const Date& d);

// Next calendar day.
Date next_day(const Date& d);

// Next Monday..Friday day strictly after d.
Date next_weekday(const Date& d);

}  // namespace chartml
