// SPDX-License-Identifier: Apache-2.0
#include "agc/features/normalizer.hpp"

#include <cmath>

#include "agc/errors.hpp"

namespace agc::features {

Normalizer::Normalizer(std::vector<double> mean, std::vector<double> std)
    : mean_(std::move(mean)), std_(std::move(std)) {
  if (mean_.size() != std_.size()) throw DimensionError("normalizer mean/std length mismatch");
  for (double s : std_) {
    if (!(s > 0.0) || !std::isfinite(s)) throw ValidationError("normalizer std must be positive");
  }
}

NormalizerFit normalize_fit(const data::SpeedSeries& train) {
  if (train.columns() == 0) throw ValidationError("cannot fit a normalizer on an empty series");
  if (!train.complete()) throw ValidationError("normalizer needs a gap-free training series");
  std::vector<double> mean(train.link_count()), std(train.link_count());
  std::vector<std::string> warnings;
  const double n = static_cast<double>(train.columns());
  for (std::size_t l = 0; l < train.link_count(); ++l) {
    const auto row = train.link_row(l);
    double total = 0.0;
    for (double v : row) total += v;
    mean[l] = total / n;
    double ss = 0.0;
    for (double v : row) ss += (v - mean[l]) * (v - mean[l]);
    std[l] = std::sqrt(ss / n);
    if (!(std[l] > 0.0)) {
      std[l] = 1.0;
      warnings.push_back("link '" + train.link_ids()[l] + "' has constant training speed; using std=1");
    }
  }
  return {Normalizer(std::move(mean), std::move(std)), std::move(warnings)};
}

}  // namespace agc::features
