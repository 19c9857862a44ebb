// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "agc/data/speed_series.hpp"
#include "agc/features/normalizer.hpp"
#include "agc/features/samples.hpp"
#include "agc/features/stats.hpp"
#include "agc/graph/road_graph.hpp"
#include "agc/train/trainer.hpp"

namespace agc::train {

/// A gap-free series cut into training and test days, with everything
/// derived from the training days only.
struct Dataset {
  graph::HopMask mask;
  features::HistoricalStats stats;   // over all training days
  features::Normalizer normalizer;   // over all training days
  std::vector<std::string> warnings;
  data::SpeedSeries train;
  data::SpeedSeries test;            // no days when train_days covers the series
  std::vector<features::Sample> fit;         // training days except the last
  std::vector<features::Sample> validation;  // the last training day
};

/// With a single training day the validation samples are the fit samples.
/// Throws ValidationError when the series has gaps, does not match the
/// graph, or train_days is 0 or exceeds the day count.
Dataset prepare_dataset(const data::SpeedSeries& series, const graph::RoadGraph& g,
                        std::size_t train_days, const TrainConfig& c);

/// Samples over the test days with the dataset's stats and mask.
std::vector<features::Sample> test_samples(const Dataset& d, std::size_t lookback, std::size_t horizon);

/// Default split used by the command-line tools: five sixths of the days
/// (rounded down, at least 1, at most days - 1).
std::size_t default_train_days(std::size_t days);

}  // namespace agc::train
