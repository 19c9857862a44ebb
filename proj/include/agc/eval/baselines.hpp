// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "agc/data/speed_series.hpp"
#include "agc/features/samples.hpp"
#include "agc/features/stats.hpp"

namespace agc::eval {

/// Historical average of each target slot; ignores the encoder window.
std::vector<double> baseline_ha(const features::HistoricalStats& stats, const features::Sample& s);

/// Last observed own-link speed, repeated over the horizon.
std::vector<double> baseline_naive(const features::Sample& s);

/// Ridge strength used when the least-squares system is rank deficient.
inline constexpr double kRidgeLambda = 1e-6;

enum class LinearStrategy {
  Rolling,  // one-step autoregression applied recursively
  Direct,   // one regression per horizon step
};

/// Per-link least-squares regressions from the own-link (lookback + 1)-slot
/// window, with intercept, fitted on windows that lie within single days.
class LinearBaseline {
 public:
  static LinearBaseline fit(const data::SpeedSeries& train, std::size_t lookback, std::size_t horizon,
                            LinearStrategy strategy);

  LinearStrategy strategy() const { return strategy_; }
  std::size_t horizon() const { return horizon_; }
  /// [intercept, w_{t-m}, ..., w_t] of `link` for horizon step j (1-based;
  /// rolling models only have j = 1).
  const std::vector<double>& coefficients(std::size_t link, std::size_t j = 1) const;
  std::vector<double> predict(const features::Sample& s) const;
  /// Predictions from an explicit own-link window, oldest first.
  std::vector<double> predict(std::size_t link, const std::vector<double>& window) const;
  /// One entry per regression that needed the ridge fallback.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  LinearStrategy strategy_ = LinearStrategy::Rolling;
  std::size_t lookback_ = 0;
  std::size_t horizon_ = 1;
  std::vector<std::vector<std::vector<double>>> coef_;  // [link][step]
  std::vector<std::string> warnings_;
};

}  // namespace agc::eval
