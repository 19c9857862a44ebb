// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "agc/data/speed_series.hpp"
#include "agc/features/stats.hpp"

namespace agc::features {

/// Maps raw channels to the scale the network trains on: speeds become
/// per-link z-scores, the time-of-day index is divided by the number of
/// slots in a full day, the weekday dummy is passed through.
class Normalizer {
 public:
  static constexpr double kSlotsPerFullDay = 288.0;

  Normalizer() = default;
  Normalizer(std::vector<double> mean, std::vector<double> std);

  std::size_t link_count() const { return mean_.size(); }
  double mean(std::size_t link) const { return mean_.at(link); }
  double std(std::size_t link) const { return std_.at(link); }
  const std::vector<double>& means() const { return mean_; }
  const std::vector<double>& stds() const { return std_; }

  double speed(std::size_t link, double kmh) const { return (kmh - mean_[link]) / std_[link]; }
  double denormalize(std::size_t link, double z) const { return mean_[link] + std_[link] * z; }
  /// A spread carries no offset; only the scale applies.
  double spread(std::size_t link, double kmh) const { return kmh / std_[link]; }
  static double time_of_day(double n) { return n / kSlotsPerFullDay; }

  friend bool operator==(const Normalizer&, const Normalizer&) = default;

 private:
  std::vector<double> mean_;
  std::vector<double> std_;
};

struct NormalizerFit {
  Normalizer normalizer;
  /// One entry per link whose training speeds were constant (std fell back to 1).
  std::vector<std::string> warnings;
};

/// Population mean and std of each link's training speeds.
NormalizerFit normalize_fit(const data::SpeedSeries& train);

}  // namespace agc::features
