// Calendar dates (proleptic Gregorian), ISO-8601 on disk.
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tdac {

struct Date {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31

  auto operator<=>(const Date&) const = default;

  /// Days since 1970-01-01. Negative before the epoch.
  std::int64_t serial() const;
  static Date from_serial(std::int64_t days);

  /// Parses "YYYY-MM-DD". Throws ParseError on malformed or invalid dates.
  static Date parse(std::string_view iso);
  static std::optional<Date> try_parse(std::string_view iso);

  std::string iso() const;         // "YYYY-MM-DD"
  std::string month_year() const;  // "mm-yyyy", used for plot axes

  Date plus_days(std::int64_t n) const { return from_serial(serial() + n); }
};

bool is_valid_date(int year, int month, int day);

}  // namespace tdac
