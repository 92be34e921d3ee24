#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arte {

// Calendar date backed by a day count since 1970-01-01.
class Date {
 public:
  constexpr Date() = default;
  Date(int year, unsigned month, unsigned day);
  explicit constexpr Date(std::chrono::sys_days days) : days_(days) {}

  // Strict ISO-8601 `YYYY-MM-DD`; nullopt on any malformation or impossible date.
  static std::optional<Date> parse(std::string_view text);

  int year() const;
  unsigned month() const;
  unsigned day() const;
  bool is_weekday() const;

  std::chrono::sys_days sys_days() const { return days_; }
  long serial() const { return days_.time_since_epoch().count(); }
  std::string iso() const;

  Date plus_days(long n) const { return Date{days_ + std::chrono::days{n}}; }

  friend constexpr auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

// Monday-to-Friday dates in [first, last]; no holiday table.
std::vector<Date> weekday_calendar(Date first, Date last);

// First weekday on or after January 1st of `year`.
Date first_weekday_of_year(int year);

}  // namespace arte
