// SPDX-License-Identifier: Apache-2.0
#include "agc/data/time_grid.hpp"

#include <charconv>
#include <cstdio>

#include "agc/errors.hpp"

namespace agc::data {

using namespace std::chrono;

TimeGrid::TimeGrid(std::vector<year_month_day> days, int slot_minutes, int day_start_minute,
                   int day_end_minute)
    : days_(std::move(days)),
      slot_minutes_(slot_minutes),
      day_start_minute_(day_start_minute),
      day_end_minute_(day_end_minute) {
  if (slot_minutes <= 0 || day_start_minute < 0 || day_end_minute > 24 * 60 ||
      day_end_minute <= day_start_minute || (day_end_minute - day_start_minute) % slot_minutes != 0 ||
      day_start_minute % slot_minutes != 0) {
    throw ValidationError("time grid window must be a positive whole number of slots within a day");
  }
  slots_per_day_ = static_cast<std::size_t>((day_end_minute - day_start_minute) / slot_minutes);
  for (const auto& d : days_) {
    if (!d.ok()) throw ValidationError("invalid calendar date in time grid");
  }
}

TimeGrid TimeGrid::consecutive(year_month_day first, std::size_t count, int slot_minutes,
                               int day_start_minute, int day_end_minute) {
  std::vector<year_month_day> days;
  days.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    days.emplace_back(sys_days{first} + std::chrono::days{static_cast<int>(i)});
  }
  return TimeGrid(std::move(days), slot_minutes, day_start_minute, day_end_minute);
}

bool TimeGrid::is_weekend(std::size_t d) const {
  const weekday wd{sys_days{days_.at(d)}};
  return wd == Saturday || wd == Sunday;
}

std::string TimeGrid::timestamp(std::size_t d, std::size_t slot) const {
  const int minute = minute_of_day(slot);
  char buf[24];
  std::snprintf(buf, sizeof buf, "T%02d:%02d", minute / 60, minute % 60);
  return format_date(days_.at(d)) + buf;
}

std::optional<std::size_t> TimeGrid::day_index(year_month_day date) const {
  for (std::size_t i = 0; i < days_.size(); ++i) {
    if (days_[i] == date) return i;
  }
  return std::nullopt;
}

TimeGrid TimeGrid::sub_grid(std::size_t first, std::size_t count) const {
  if (first + count > days_.size()) throw ValidationError("sub_grid range exceeds day list");
  std::vector<year_month_day> days(days_.begin() + static_cast<std::ptrdiff_t>(first),
                                   days_.begin() + static_cast<std::ptrdiff_t>(first + count));
  return TimeGrid(std::move(days), slot_minutes_, day_start_minute_, day_end_minute_);
}

int time_of_day_index(int minute_of_day, int slot_minutes) { return 1 + minute_of_day / slot_minutes; }

int time_of_day_index(const TimeGrid& grid, std::size_t slot) {
  if (slot >= grid.slots_per_day()) throw ValidationError("slot outside the daily window");
  return time_of_day_index(grid.minute_of_day(slot), grid.slot_minutes());
}

namespace {

bool read_int(const std::string& s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  std::from_chars(s.data() + pos, s.data() + pos + len, out);
  return true;
}

}  // namespace

std::optional<year_month_day> parse_date(const std::string& text) {
  int y = 0, m = 0, d = 0;
  if (text.size() < 10 || text[4] != '-' || text[7] != '-' || !read_int(text, 0, 4, y) ||
      !read_int(text, 5, 2, m) || !read_int(text, 8, 2, d)) {
    return std::nullopt;
  }
  const year_month_day date{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::optional<Timestamp> parse_timestamp(const std::string& text) {
  if (text.size() != 16 || text[10] != 'T' || text[13] != ':') return std::nullopt;
  auto date = parse_date(text.substr(0, 10));
  int hh = 0, mm = 0;
  if (!date || !read_int(text, 11, 2, hh) || !read_int(text, 14, 2, mm) || hh > 23 || mm > 59) {
    return std::nullopt;
  }
  return Timestamp{*date, hh * 60 + mm};
}

std::string format_date(year_month_day date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

}  // namespace agc::data
