// SPDX-License-Identifier: Apache-2.0
#include "agc/eval/baselines.hpp"

#include <Eigen/Dense>

#include "agc/errors.hpp"

namespace agc::eval {

std::vector<double> baseline_ha(const features::HistoricalStats& stats, const features::Sample& s) {
  std::vector<double> out(s.horizon());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = stats.at(s.link, s.anchor_slot + j + 1).average;
  return out;
}

std::vector<double> baseline_naive(const features::Sample& s) {
  if (s.steps() == 0) throw ValidationError("naive baseline needs a nonempty encoder window");
  return std::vector<double>(s.horizon(), s.own_speed(s.steps() - 1));
}

namespace {

// Least squares via rank-revealing QR, falling back to ridge-regularised
// normal equations when the design is rank deficient.
std::vector<double> solve(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, bool& ridged) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  Eigen::VectorXd beta;
  ridged = qr.rank() < x.cols();
  if (!ridged) {
    beta = qr.solve(y);
  } else {
    Eigen::MatrixXd a = x.transpose() * x;
    a.diagonal().array() += kRidgeLambda;
    beta = a.ldlt().solve(x.transpose() * y);
  }
  return {beta.data(), beta.data() + beta.size()};
}

}  // namespace

LinearBaseline LinearBaseline::fit(const data::SpeedSeries& train, std::size_t lookback, std::size_t horizon,
                                   LinearStrategy strategy) {
  if (horizon == 0) throw ValidationError("linear baseline horizon must be at least 1");
  if (!train.complete()) throw ValidationError("linear baseline needs a gap-free training series");
  const std::size_t slots = train.grid().slots_per_day();
  const std::size_t days = train.grid().day_count();
  const std::size_t steps = strategy == LinearStrategy::Rolling ? 1 : horizon;
  LinearBaseline b;
  b.strategy_ = strategy;
  b.lookback_ = lookback;
  b.horizon_ = horizon;
  b.coef_.resize(train.link_count());
  const std::size_t width = lookback + 2;
  for (std::size_t l = 0; l < train.link_count(); ++l) {
    for (std::size_t j = 1; j <= steps; ++j) {
      if (slots < lookback + 1 + j) throw ValidationError("day too short for the linear baseline window");
      const std::size_t per_day = slots - lookback - j;
      const std::size_t rows = per_day * days;
      if (rows == 0) throw ValidationError("no training windows for the linear baseline");
      Eigen::MatrixXd x(rows, width);
      Eigen::VectorXd y(rows);
      std::size_t r = 0;
      for (std::size_t d = 0; d < days; ++d) {
        const auto v = train.day_row(l, d);
        for (std::size_t t = lookback; t + j < slots; ++t, ++r) {
          x(r, 0) = 1.0;
          for (std::size_t k = 0; k <= lookback; ++k) x(r, 1 + k) = v[t - lookback + k];
          y(r) = v[t + j];
        }
      }
      bool ridged = false;
      b.coef_[l].push_back(solve(x, y, ridged));
      if (ridged) {
        b.warnings_.push_back("link " + train.link_ids()[l] + ", step " + std::to_string(j) +
                              ": rank-deficient least squares, used ridge fallback");
      }
    }
  }
  return b;
}

const std::vector<double>& LinearBaseline::coefficients(std::size_t link, std::size_t j) const {
  if (link >= coef_.size() || j == 0 || j > coef_[link].size()) {
    throw ReferenceError("no linear model for link " + std::to_string(link) + " step " + std::to_string(j));
  }
  return coef_[link][j - 1];
}

std::vector<double> LinearBaseline::predict(std::size_t link, const std::vector<double>& window) const {
  if (window.size() != lookback_ + 1) {
    throw DimensionError("linear baseline expects a " + std::to_string(lookback_ + 1) + "-step window, got " +
                         std::to_string(window.size()));
  }
  auto apply = [](const std::vector<double>& c, const std::vector<double>& w) {
    double acc = c[0];
    for (std::size_t k = 0; k < w.size(); ++k) acc += c[k + 1] * w[k];
    return acc;
  };
  std::vector<double> out(horizon_);
  if (strategy_ == LinearStrategy::Direct) {
    for (std::size_t j = 1; j <= horizon_; ++j) out[j - 1] = apply(coefficients(link, j), window);
    return out;
  }
  const auto& c = coefficients(link, 1);
  std::vector<double> w = window;
  for (std::size_t j = 0; j < horizon_; ++j) {
    out[j] = apply(c, w);
    w.erase(w.begin());
    w.push_back(out[j]);
  }
  return out;
}

std::vector<double> LinearBaseline::predict(const features::Sample& s) const {
  if (s.horizon() != horizon_) {
    throw DimensionError("linear baseline fitted for horizon " + std::to_string(horizon_) +
                         ", sample has " + std::to_string(s.horizon()));
  }
  return predict(s.link, s.own_window());
}

}  // namespace agc::eval
