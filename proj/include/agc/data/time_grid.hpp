// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace agc::data {

/// Fixed daily slot grid over a list of calendar days. Each day covers
/// [day_start_minute, day_end_minute) in slot_minutes steps; the default
/// 06:00-22:00 window at 5 minutes gives 192 slots.
class TimeGrid {
 public:
  TimeGrid() = default;
  TimeGrid(std::vector<std::chrono::year_month_day> days, int slot_minutes = 5,
           int day_start_minute = 6 * 60, int day_end_minute = 22 * 60);

  /// `count` consecutive days starting at `first`.
  static TimeGrid consecutive(std::chrono::year_month_day first, std::size_t count,
                              int slot_minutes = 5, int day_start_minute = 6 * 60,
                              int day_end_minute = 22 * 60);

  int slot_minutes() const { return slot_minutes_; }
  int day_start_minute() const { return day_start_minute_; }
  int day_end_minute() const { return day_end_minute_; }
  std::size_t slots_per_day() const { return slots_per_day_; }
  std::size_t day_count() const { return days_.size(); }
  std::size_t columns() const { return days_.size() * slots_per_day_; }
  const std::vector<std::chrono::year_month_day>& days() const { return days_; }
  std::chrono::year_month_day day(std::size_t d) const { return days_.at(d); }

  bool is_weekend(std::size_t d) const;
  /// Weekday-or-weekend dummy: 1 on weekdays, 0 on weekends.
  double weekday_flag(std::size_t d) const { return is_weekend(d) ? 0.0 : 1.0; }

  std::size_t column(std::size_t d, std::size_t slot) const { return d * slots_per_day_ + slot; }
  std::size_t day_of(std::size_t col) const { return col / slots_per_day_; }
  std::size_t slot_of(std::size_t col) const { return col % slots_per_day_; }
  int minute_of_day(std::size_t slot) const {
    return day_start_minute_ + static_cast<int>(slot) * slot_minutes_;
  }

  /// ISO-8601 minute precision, e.g. 2016-10-01T06:00.
  std::string timestamp(std::size_t d, std::size_t slot) const;
  std::string timestamp(std::size_t col) const { return timestamp(day_of(col), slot_of(col)); }

  std::optional<std::size_t> day_index(std::chrono::year_month_day date) const;

  /// Days [first, first + count).
  TimeGrid sub_grid(std::size_t first, std::size_t count) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  std::vector<std::chrono::year_month_day> days_;
  int slot_minutes_ = 5;
  int day_start_minute_ = 6 * 60;
  int day_end_minute_ = 22 * 60;
  std::size_t slots_per_day_ = 192;
};

/// Time-of-day index N = 1 + minutes_since_midnight / slot_minutes, so the
/// 00:00 slot is 1 and 07:00 at 5-minute resolution is 85.
int time_of_day_index(int minute_of_day, int slot_minutes = 5);
int time_of_day_index(const TimeGrid& grid, std::size_t slot);

struct Timestamp {
  std::chrono::year_month_day date;
  int minute_of_day = 0;
};

/// Parses `YYYY-MM-DDTHH:MM`. Returns nullopt on malformed text.
std::optional<Timestamp> parse_timestamp(const std::string& text);
std::string format_date(std::chrono::year_month_day date);
std::optional<std::chrono::year_month_day> parse_date(const std::string& text);

}  // namespace agc::data
