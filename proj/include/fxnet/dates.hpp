#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fxnet::dates {

/// Days since 1970-01-01 for a civil date (proleptic Gregorian).
long days_from_civil(int y, unsigned m, unsigned d);

/// Inverse of days_from_civil.
void civil_from_days(long z, int& y, unsigned& m, unsigned& d);

/// Strict ISO-8601 date check ("YYYY-MM-DD", valid calendar day).
bool is_valid_iso(std::string_view s);

/// Parse "YYYY-MM-DD" to days since epoch; throws ParseError on bad input.
long parse_iso(std::string_view s);

std::string format_iso(long days_since_epoch);

bool is_weekday(long days_since_epoch);

/// `count` consecutive weekdays starting at `start` (start bumped forward to a
/// weekday if it falls on a weekend).
std::vector<std::string> weekday_sequence(std::string_view start_iso, int count);

} // namespace fxnet::dates
