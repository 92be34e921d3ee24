#include "arte/date.hpp"

#include <charconv>

#include <fmt/format.h>

#include "arte/error.hpp"

namespace arte {

namespace chr = std::chrono;

Date::Date(int year, unsigned month, unsigned day) {
  chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
  if (!ymd.ok()) {
    throw DomainError(fmt::format("invalid date {}-{}-{}", year, month, day));
  }
  days_ = chr::sys_days{ymd};
}

std::optional<Date> Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto field = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int value = 0;
    const char* first = text.data() + pos;
    const char* last = first + len;
    for (const char* p = first; p != last; ++p) {
      if (*p < '0' || *p > '9') return std::nullopt;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return value;
  };
  auto y = field(0, 4);
  auto m = field(5, 2);
  auto d = field(8, 2);
  if (!y || !m || !d) return std::nullopt;
  chr::year_month_day ymd{chr::year{*y}, chr::month{static_cast<unsigned>(*m)},
                          chr::day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{chr::sys_days{ymd}};
}

int Date::year() const { return static_cast<int>(chr::year_month_day{days_}.year()); }

unsigned Date::month() const { return static_cast<unsigned>(chr::year_month_day{days_}.month()); }

unsigned Date::day() const { return static_cast<unsigned>(chr::year_month_day{days_}.day()); }

bool Date::is_weekday() const {
  const unsigned wd = chr::weekday{days_}.c_encoding();
  return wd != 0 && wd != 6;
}

std::string Date::iso() const { return fmt::format("{:04d}-{:02d}-{:02d}", year(), month(), day()); }

std::vector<Date> weekday_calendar(Date first, Date last) {
  std::vector<Date> out;
  for (Date d = first; d <= last; d = d.plus_days(1)) {
    if (d.is_weekday()) out.push_back(d);
  }
  return out;
}

Date first_weekday_of_year(int year) {
  Date d{year, 1, 1};
  while (!d.is_weekday()) d = d.plus_days(1);
  return d;
}

}  // namespace arte
