// SPDX-License-Identifier: Apache-2.0
#include "agc/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "agc/errors.hpp"

namespace agc::eval {

ErrorMetrics metrics(std::span<const double> truth, std::span<const double> predictions) {
  if (truth.size() != predictions.size()) {
    throw DimensionError("metrics: " + std::to_string(truth.size()) + " truths vs " +
                         std::to_string(predictions.size()) + " predictions");
  }
  if (truth.empty()) throw DomainError("metrics: no values");
  double ape = 0.0, ae = 0.0, se = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double e = std::fabs(truth[i] - predictions[i]);
    ape += e / std::max(truth[i], kMapeFloorKmh);
    ae += e;
    se += e * e;
  }
  const double q = static_cast<double>(truth.size());
  return {100.0 * ape / q, ae / q, std::sqrt(se / q), truth.size()};
}

}  // namespace agc::eval
