// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>

#include "agc/data/speed_series.hpp"
#include "agc/graph/road_graph.hpp"

namespace agc::data {

struct LoadResult {
  SpeedSeries series;
  /// Repeated (timestamp, link) rows; the last one wins.
  std::size_t duplicate_rows = 0;
};

/// Long-format speed CSV, header `timestamp,link_id,speed_kmh`. Cells with
/// no row are left missing. Throws ReferenceError for an unknown link and
/// FormatError (naming the line) for a timestamp off the grid.
LoadResult load_csv(const std::filesystem::path& path, const graph::RoadGraph& g, const TimeGrid& grid);

/// The consecutive-day grid spanning the earliest to the latest date in the file.
TimeGrid infer_grid(const std::filesystem::path& path, int slot_minutes = 5,
                    int day_start_minute = 6 * 60, int day_end_minute = 22 * 60);

/// Observed cells only, ordered by column then link.
void write_csv(const SpeedSeries& s, const std::filesystem::path& path);

}  // namespace agc::data
