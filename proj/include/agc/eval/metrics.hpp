// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>

namespace agc::eval {

/// Speeds below this are clamped in the MAPE denominator.
inline constexpr double kMapeFloorKmh = 1.0;

struct ErrorMetrics {
  double mape_pct = 0.0;
  double mae = 0.0;
  double rmse = 0.0;
  std::size_t count = 0;
};

/// MAPE = 100/Q sum |v - p| / max(v, 1), MAE = 1/Q sum |v - p|,
/// RMSE = sqrt(1/Q sum (v - p)^2). Throws DomainError on empty input and
/// DimensionError on a length mismatch.
ErrorMetrics metrics(std::span<const double> truth, std::span<const double> predictions);

}  // namespace agc::eval
