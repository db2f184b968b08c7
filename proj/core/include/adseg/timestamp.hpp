#ifndef ADSEG_TIMESTAMP_HPP
#define ADSEG_TIMESTAMP_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace adseg {

// Minute-precision calendar timestamp. No timezone handling anywhere: times
// are ordered and stored exactly as they appear in the logs.
struct Timestamp {
  std::int64_t minutes = 0;  // minutes since 1970-01-01T00:00

  // Rejects impossible calendar dates (leap years handled), hour > 23,
  // minute > 59.
  static std::optional<Timestamp> make(int year, int month, int day, int hour,
                                       int minute);

  // "YYYY-MM-DDTHH:MM"
  static std::optional<Timestamp> parse_iso(std::string_view text);

  // Legacy log form "dd/mm/yyyy h:mmam" / "dd/mm/yyyy h:mmpm" (12-hour
  // clock, day and hour may be one digit).
  static std::optional<Timestamp> parse_compat(std::string_view text);

  // ISO first, then the compat form.
  static std::optional<Timestamp> parse(std::string_view text);

  std::string to_iso() const;

  int hour() const;
  int minute() const;
  int minute_of_day() const;

  auto operator<=>(const Timestamp&) const = default;
};

}  // namespace adseg

#endif  // ADSEG_TIMESTAMP_HPP
