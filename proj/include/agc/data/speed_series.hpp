// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "agc/data/time_grid.hpp"
#include "agc/graph/road_graph.hpp"

namespace agc::data {

/// Per-link speeds (km/h) on a TimeGrid: |L| rows by days*slots columns,
/// with an observed flag per cell. Column t is (day t / S, slot t % S).
class SpeedSeries {
 public:
  SpeedSeries() = default;
  /// All cells start missing.
  SpeedSeries(TimeGrid grid, std::vector<std::string> link_ids);

  const TimeGrid& grid() const { return grid_; }
  const std::vector<std::string>& link_ids() const { return link_ids_; }
  std::size_t link_count() const { return link_ids_.size(); }
  std::size_t columns() const { return grid_.columns(); }

  double speed(std::size_t link, std::size_t col) const { return values_[link * columns() + col]; }
  bool observed(std::size_t link, std::size_t col) const { return observed_[link * columns() + col] != 0; }
  /// Throws ValidationError for negative or non-finite speeds.
  void set(std::size_t link, std::size_t col, double kmh);
  void clear(std::size_t link, std::size_t col);

  std::span<const double> link_row(std::size_t link) const {
    return {values_.data() + link * columns(), columns()};
  }
  std::span<const double> day_row(std::size_t link, std::size_t d) const {
    return {values_.data() + link * columns() + d * grid_.slots_per_day(), grid_.slots_per_day()};
  }

  std::size_t missing_count() const;
  bool complete() const { return missing_count() == 0; }

  /// Days [first, first + count) as a new series.
  SpeedSeries day_range(std::size_t first, std::size_t count) const;

  /// Throws ValidationError unless the link ordering matches the graph.
  void check_graph(const graph::RoadGraph& g) const;

  friend bool operator==(const SpeedSeries&, const SpeedSeries&) = default;

 private:
  TimeGrid grid_;
  std::vector<std::string> link_ids_;
  std::vector<double> values_;
  std::vector<std::uint8_t> observed_;
};

/// Fill missing cells per link and per day: interior gaps linearly between
/// the nearest observed neighbours, leading/trailing gaps with the nearest
/// observed value that day, fully missing days with the link's per-slot mean
/// over the days it was observed. Throws ValidationError for a link with no
/// observations at all.
SpeedSeries interpolate_missing(const SpeedSeries& s);

/// Chronological split on day boundaries: first `train_days` days and the
/// remainder. Throws ValidationError unless 1 <= train_days < day_count.
std::pair<SpeedSeries, SpeedSeries> split(const SpeedSeries& s, std::size_t train_days);

}  // namespace agc::data
