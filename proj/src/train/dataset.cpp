// SPDX-License-Identifier: Apache-2.0
#include "agc/train/dataset.hpp"

#include <algorithm>

#include "agc/errors.hpp"

namespace agc::train {

Dataset prepare_dataset(const data::SpeedSeries& series, const graph::RoadGraph& g, std::size_t train_days,
                        const TrainConfig& c) {
  series.check_graph(g);
  if (!series.complete()) throw ValidationError("series has missing cells; interpolate first");
  const std::size_t days = series.grid().day_count();
  if (train_days == 0 || train_days > days) {
    throw ValidationError("train days must be in [1, " + std::to_string(days) + "], got " +
                          std::to_string(train_days));
  }
  Dataset d;
  d.mask = graph::hop_mask(g, c.k, c.hop_mode);
  d.train = series.day_range(0, train_days);
  d.test = series.day_range(train_days, days - train_days);
  d.stats = features::compute_stats(d.train);
  auto nf = features::normalize_fit(d.train);
  d.normalizer = std::move(nf.normalizer);
  d.warnings = std::move(nf.warnings);

  const features::SampleSpec spec{c.lookback, c.horizon};
  if (train_days == 1) {
    d.fit = features::build_samples(d.train, d.stats, d.mask, spec);
    d.validation = d.fit;
  } else {
    d.fit = features::build_samples(d.train.day_range(0, train_days - 1), d.stats, d.mask, spec);
    d.validation = features::build_samples(d.train.day_range(train_days - 1, 1), d.stats, d.mask, spec);
  }
  return d;
}

std::vector<features::Sample> test_samples(const Dataset& d, std::size_t lookback, std::size_t horizon) {
  if (d.test.grid().day_count() == 0) return {};
  return features::build_samples(d.test, d.stats, d.mask, {lookback, horizon});
}

std::size_t default_train_days(std::size_t days) {
  if (days < 2) return days;
  return std::clamp<std::size_t>(days * 5 / 6, 1, days - 1);
}

}  // namespace agc::train
