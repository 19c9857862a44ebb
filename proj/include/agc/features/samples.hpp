// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "agc/data/speed_series.hpp"
#include "agc/features/stats.hpp"
#include "agc/graph/road_graph.hpp"

namespace agc::features {

/// One (link, anchor time) training or evaluation instance, in raw units.
///
/// The encoder window covers the lookback+1 slots ending at the anchor, the
/// targets the `horizon` slots after it; all of them lie in one day.
struct Sample {
  std::size_t link = 0;
  std::size_t day = 0;
  std::size_t anchor_slot = 0;
  /// Mask row of `link`, ascending; the links whose speeds are kept.
  std::vector<std::size_t> neighbors;
  /// Position of `link` inside `neighbors`.
  std::size_t self_position = 0;
  /// Step-major, oldest step first: encoder_speeds[s * |neighbors| + k] is
  /// the speed of neighbors[k] at anchor - lookback + s.
  std::vector<double> encoder_speeds;
  /// (N, p) per encoder step, oldest first.
  std::vector<std::array<double, 2>> encoder_exog;
  /// (N, average, median, max, min, std) per target step, keyed by the
  /// target slot's time of day.
  std::vector<std::array<double, 6>> decoder_exog;
  /// Raw speeds at anchor + 1 .. anchor + horizon.
  std::vector<double> targets;

  std::size_t steps() const { return encoder_exog.size(); }
  std::size_t horizon() const { return targets.size(); }
  double speed(std::size_t step, std::size_t k) const {
    return encoder_speeds[step * neighbors.size() + k];
  }
  double own_speed(std::size_t step) const { return speed(step, self_position); }
  /// Own-link speeds over the encoder window, oldest first.
  std::vector<double> own_window() const;
};

struct SampleSpec {
  std::size_t lookback = 11;  // m: the window holds m + 1 steps
  std::size_t horizon = 1;    // n
};

/// Every (link, anchor) whose [anchor - m, anchor + n] fits inside one day,
/// link-major then chronological. Throws ValidationError when n is zero or
/// a day is too short for m + 1 + n slots, or when `s` has missing cells.
std::vector<Sample> build_samples(const data::SpeedSeries& s, const HistoricalStats& stats,
                                  const graph::HopMask& mask, const SampleSpec& spec);

/// Anchors per link per day for a given window: slots - m - n.
std::size_t anchors_per_day(std::size_t slots_per_day, const SampleSpec& spec);

}  // namespace agc::features
