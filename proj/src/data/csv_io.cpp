// SPDX-License-Identifier: Apache-2.0
#include "agc/data/csv_io.hpp"

#include <fstream>
#include <optional>

#include "agc/csv.hpp"
#include "agc/errors.hpp"

namespace agc::data {

namespace {
const std::vector<std::string> kHeader{"timestamp", "link_id", "speed_kmh"};
}

LoadResult load_csv(const std::filesystem::path& path, const graph::RoadGraph& g, const TimeGrid& grid) {
  const auto table = csv::read(path, kHeader);
  LoadResult result{SpeedSeries(grid, g.link_ids()), 0};
  std::vector<std::uint8_t> seen(g.link_count() * grid.columns(), 0);

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = path.string() + ":" + std::to_string(table.line_numbers[r]);
    const auto ts = parse_timestamp(row[0]);
    if (!ts) throw FormatError(where + ": malformed timestamp '" + row[0] + "'");
    const int offset = ts->minute_of_day - grid.day_start_minute();
    const auto day = grid.day_index(ts->date);
    if (!day || offset < 0 || ts->minute_of_day >= grid.day_end_minute() ||
        offset % grid.slot_minutes() != 0) {
      throw FormatError(where + ": timestamp '" + row[0] + "' is off the " +
                        std::to_string(grid.slot_minutes()) + "-minute grid");
    }
    const auto link = g.find(row[1]);
    if (!link) throw ReferenceError(where + ": unknown link id '" + row[1] + "'");
    const std::size_t col = grid.column(*day, static_cast<std::size_t>(offset / grid.slot_minutes()));
    const double v = csv::parse_double(row[2], where);
    if (seen[*link * grid.columns() + col]) ++result.duplicate_rows;
    seen[*link * grid.columns() + col] = 1;
    try {
      result.series.set(*link, col, v);
    } catch (const ValidationError& e) {
      throw FormatError(where + ": " + e.what());
    }
  }
  return result;
}

TimeGrid infer_grid(const std::filesystem::path& path, int slot_minutes, int day_start_minute,
                    int day_end_minute) {
  const auto table = csv::read(path, kHeader);
  std::optional<std::chrono::sys_days> lo, hi;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto ts = parse_timestamp(table.rows[r][0]);
    if (!ts) {
      throw FormatError(path.string() + ":" + std::to_string(table.line_numbers[r]) +
                        ": malformed timestamp '" + table.rows[r][0] + "'");
    }
    const std::chrono::sys_days d{ts->date};
    if (!lo || d < *lo) lo = d;
    if (!hi || d > *hi) hi = d;
  }
  if (!lo) throw FormatError(path.string() + ": no data rows");
  const auto count = static_cast<std::size_t>((*hi - *lo).count() + 1);
  return TimeGrid::consecutive(std::chrono::year_month_day{*lo}, count, slot_minutes,
                               day_start_minute, day_end_minute);
}

void write_csv(const SpeedSeries& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << "timestamp,link_id,speed_kmh\n";
  for (std::size_t c = 0; c < s.columns(); ++c) {
    const std::string ts = s.grid().timestamp(c);
    for (std::size_t l = 0; l < s.link_count(); ++l) {
      if (!s.observed(l, c)) continue;
      out << ts << ',' << s.link_ids()[l] << ',' << csv::format_double(s.speed(l, c)) << '\n';
    }
  }
  if (!out) throw FormatError("failed writing " + path.string());
}

}  // namespace agc::data
