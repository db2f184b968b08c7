#include "adseg/timestamp.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace adseg {
namespace {

constexpr std::int64_t kMinutesPerDay = 24 * 60;

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr std::array<int, 12> days = {31, 28, 31, 30, 31, 30,
                                               31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return days[m - 1];
}

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yy + (m <= 2));
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::optional<Timestamp> Timestamp::make(int year, int month, int day,
                                         int hour, int minute) {
  if (month < 1 || month > 12) return std::nullopt;
  if (day < 1 || day > days_in_month(year, month)) return std::nullopt;
  if (hour < 0 || hour > 23) return std::nullopt;
  if (minute < 0 || minute > 59) return std::nullopt;
  return Timestamp{days_from_civil(year, month, day) * kMinutesPerDay +
                   hour * 60 + minute};
}

std::optional<Timestamp> Timestamp::parse_iso(std::string_view t) {
  // YYYY-MM-DDTHH:MM
  if (t.size() != 16 || t[4] != '-' || t[7] != '-' || t[10] != 'T' ||
      t[13] != ':')
    return std::nullopt;
  int y, mo, d, h, mi;
  if (!parse_int(t.substr(0, 4), y) || !parse_int(t.substr(5, 2), mo) ||
      !parse_int(t.substr(8, 2), d) || !parse_int(t.substr(11, 2), h) ||
      !parse_int(t.substr(14, 2), mi))
    return std::nullopt;
  return make(y, mo, d, h, mi);
}

std::optional<Timestamp> Timestamp::parse_compat(std::string_view t) {
  // dd/mm/yyyy h:mmam|pm
  const auto s1 = t.find('/');
  if (s1 == std::string_view::npos) return std::nullopt;
  const auto s2 = t.find('/', s1 + 1);
  if (s2 == std::string_view::npos) return std::nullopt;
  const auto sp = t.find(' ', s2 + 1);
  if (sp == std::string_view::npos) return std::nullopt;
  const auto co = t.find(':', sp + 1);
  if (co == std::string_view::npos || t.size() < co + 5) return std::nullopt;

  int d, mo, y, h12, mi;
  if (!parse_int(t.substr(0, s1), d) ||
      !parse_int(t.substr(s1 + 1, s2 - s1 - 1), mo) ||
      !parse_int(t.substr(s2 + 1, sp - s2 - 1), y) ||
      !parse_int(t.substr(sp + 1, co - sp - 1), h12) ||
      !parse_int(t.substr(co + 1, 2), mi))
    return std::nullopt;

  std::string_view suffix = t.substr(co + 3);
  bool pm;
  if (suffix == "am" || suffix == "AM")
    pm = false;
  else if (suffix == "pm" || suffix == "PM")
    pm = true;
  else
    return std::nullopt;

  if (h12 < 1 || h12 > 12) return std::nullopt;
  int h = h12 % 12 + (pm ? 12 : 0);
  return make(y, mo, d, h, mi);
}

std::optional<Timestamp> Timestamp::parse(std::string_view t) {
  if (auto ts = parse_iso(t)) return ts;
  return parse_compat(t);
}

std::string Timestamp::to_iso() const {
  std::int64_t days = minutes / kMinutesPerDay;
  std::int64_t rem = minutes % kMinutesPerDay;
  if (rem < 0) {
    rem += kMinutesPerDay;
    days -= 1;
  }
  int y, m, d;
  civil_from_days(days, y, m, d);
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d", y, m, d,
                static_cast<int>(rem / 60), static_cast<int>(rem % 60));
  return buf;
}

int Timestamp::hour() const { return minute_of_day() / 60; }
int Timestamp::minute() const { return minute_of_day() % 60; }

int Timestamp::minute_of_day() const {
  std::int64_t rem = minutes % kMinutesPerDay;
  if (rem < 0) rem += kMinutesPerDay;
  return static_cast<int>(rem);
}

}  // namespace adseg
