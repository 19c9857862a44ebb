// SPDX-License-Identifier: Apache-2.0
#include "agc/features/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "agc/csv.hpp"
#include "agc/errors.hpp"

namespace agc::features {

HistoricalStats::HistoricalStats(data::TimeGrid grid, std::vector<std::string> link_ids,
                                 std::vector<SlotStats> cells)
    : grid_(std::move(grid)), link_ids_(std::move(link_ids)), cells_(std::move(cells)) {
  if (cells_.size() != link_ids_.size() * grid_.slots_per_day()) {
    throw DimensionError("historical stats table size mismatch");
  }
}

const SlotStats& HistoricalStats::at(std::size_t link, std::size_t slot) const {
  if (link >= link_ids_.size() || slot >= grid_.slots_per_day()) {
    throw ValidationError("no historical stats for link " + std::to_string(link) + " slot " +
                          std::to_string(slot));
  }
  return cells_[link * grid_.slots_per_day() + slot];
}

HistoricalStats compute_stats(const data::SpeedSeries& train) {
  if (train.grid().day_count() == 0 || train.link_count() == 0) {
    throw ValidationError("cannot compute stats on an empty series");
  }
  if (!train.complete()) {
    throw ValidationError("historical stats need a gap-free series; interpolate first");
  }
  const auto& grid = train.grid();
  const std::size_t slots = grid.slots_per_day();
  const std::size_t days = grid.day_count();
  std::vector<SlotStats> cells(train.link_count() * slots);
  std::vector<double> xs(days);

  for (std::size_t l = 0; l < train.link_count(); ++l) {
    for (std::size_t k = 0; k < slots; ++k) {
      double total = 0.0;
      for (std::size_t d = 0; d < days; ++d) {
        xs[d] = train.speed(l, grid.column(d, k));
        total += xs[d];
      }
      SlotStats s;
      s.average = total / static_cast<double>(days);
      double ss = 0.0;
      for (double x : xs) ss += (x - s.average) * (x - s.average);
      s.std = std::sqrt(ss / static_cast<double>(days));
      std::vector<double> sorted = xs;
      std::sort(sorted.begin(), sorted.end());
      s.min = sorted.front();
      s.max = sorted.back();
      s.median = days % 2 ? sorted[days / 2] : 0.5 * (sorted[days / 2 - 1] + sorted[days / 2]);
      // Rounding in the mean can step outside [min, max] for near-constant data.
      s.average = std::clamp(s.average, s.min, s.max);
      cells[l * slots + k] = s;
    }
  }
  return HistoricalStats(grid.sub_grid(0, 0), train.link_ids(), std::move(cells));
}

void write_stats_csv(const HistoricalStats& stats, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << "link_id,N,avg,median,max,min,std\n";
  for (std::size_t l = 0; l < stats.link_count(); ++l) {
    for (std::size_t k = 0; k < stats.slots_per_day(); ++k) {
      const auto& s = stats.at(l, k);
      out << stats.link_ids()[l] << ',' << data::time_of_day_index(stats.grid(), k) << ','
          << csv::format_double(s.average) << ',' << csv::format_double(s.median) << ','
          << csv::format_double(s.max) << ',' << csv::format_double(s.min) << ','
          << csv::format_double(s.std) << '\n';
    }
  }
}

}  // namespace agc::features
