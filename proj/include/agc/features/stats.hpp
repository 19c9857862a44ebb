// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "agc/data/speed_series.hpp"

namespace agc::features {

struct SlotStats {
  double average = 0.0;
  double median = 0.0;
  double max = 0.0;
  double min = 0.0;
  double std = 0.0;  // population standard deviation

  friend bool operator==(const SlotStats&, const SlotStats&) = default;
};

/// Per (link, slot-of-day) summary of training speeds.
class HistoricalStats {
 public:
  HistoricalStats() = default;
  HistoricalStats(data::TimeGrid grid, std::vector<std::string> link_ids, std::vector<SlotStats> cells);

  const SlotStats& at(std::size_t link, std::size_t slot) const;
  std::size_t link_count() const { return link_ids_.size(); }
  std::size_t slots_per_day() const { return grid_.slots_per_day(); }
  const std::vector<std::string>& link_ids() const { return link_ids_; }
  /// Window layout of the grid the stats were computed on.
  const data::TimeGrid& grid() const { return grid_; }

  friend bool operator==(const HistoricalStats&, const HistoricalStats&) = default;

 private:
  data::TimeGrid grid_;
  std::vector<std::string> link_ids_;
  std::vector<SlotStats> cells_;
};

/// Stats over every day of `train` (which must have no missing cells). An
/// even count takes the median as the mean of the two central values.
HistoricalStats compute_stats(const data::SpeedSeries& train);

/// Header `link_id,N,avg,median,max,min,std`.
void write_stats_csv(const HistoricalStats& stats, const std::filesystem::path& path);

}  // namespace agc::features
