// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "agc/data/speed_series.hpp"
#include "agc/graph/road_graph.hpp"
#include "agc/train/trainer.hpp"

namespace agc::eval {

struct KhopRow {
  std::size_t k = 0;
  std::size_t horizon = 0;
  double mape_pct = 0.0;
  double mae_kmh = 0.0;
  double rmse_kmh = 0.0;
  std::size_t q = 0;
};

/// Trains one model per K (same seed and config otherwise) on the first
/// `train_days` days and scores it on the rest, one row per (K, step).
std::vector<KhopRow> khop_sweep(const data::SpeedSeries& series, const graph::RoadGraph& g,
                                std::size_t train_days, const train::TrainConfig& base,
                                const std::vector<std::size_t>& ks, std::size_t window_horizon = 0,
                                const std::function<void(const std::string&)>& log = {});

/// Header `k,horizon,mape_pct,mae_kmh,rmse_kmh,q`.
void write_khop_csv(const std::vector<KhopRow>& rows, const std::filesystem::path& path);

}  // namespace agc::eval
