// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "agc/data/speed_series.hpp"
#include "agc/eval/metrics.hpp"
#include "agc/features/normalizer.hpp"
#include "agc/features/samples.hpp"
#include "agc/features/stats.hpp"
#include "agc/model/params.hpp"
#include "json.hpp"

namespace agc::eval {

enum class Predictor { Model, Ha, Naive, Rolling, Direct };

std::string to_string(Predictor p);
/// Comma-separated names: model, ha, naive, rolling, direct.
std::vector<Predictor> parse_predictors(const std::string& list);

/// What the predictors need. `params`/`normalizer` are only read for the
/// model, `train` only for the linear baselines.
struct EvalContext {
  const model::ModelParams* params = nullptr;
  const features::Normalizer* normalizer = nullptr;
  const features::HistoricalStats* stats = nullptr;
  const data::SpeedSeries* train = nullptr;
  /// Targets are scored only in slots [m + W, S - W] with W = max(this, n),
  /// so every horizon step (and every n <= W) covers the same target cells.
  std::size_t window_horizon = 0;
  std::size_t threads = 1;
};

struct MetricsRow {
  std::string predictor;
  std::size_t horizon = 0;  // 1..n, 0 for the aggregate over all steps
  double mape_pct = 0.0;
  double mae_kmh = 0.0;
  double rmse_kmh = 0.0;
  std::size_t q = 0;
  double seconds = 0.0;
};

struct MetricsReport {
  std::vector<MetricsRow> rows;
  std::vector<std::string> warnings;

  /// Throws ReferenceError when absent.
  const MetricsRow& find(const std::string& predictor, std::size_t horizon) const;
};

/// Runs each predictor over the same samples (all with one horizon n) and
/// scores per horizon step plus an aggregate row, in raw km/h.
MetricsReport evaluate_all(const EvalContext& ctx, std::span<const features::Sample> samples,
                           const std::vector<Predictor>& predictors);

/// Forecasts for every sample in order, km/h.
std::vector<std::vector<double>> predict_all(const EvalContext& ctx, std::span<const features::Sample> samples,
                                             Predictor predictor);

/// Header `predictor,horizon,mape_pct,mae_kmh,rmse_kmh,q,seconds`; the
/// aggregate row uses horizon `all`. Timings are written only when asked,
/// so that repeated runs produce identical files.
void write_metrics_csv(const MetricsReport& r, const std::filesystem::path& path, bool include_timing);
nlohmann::json to_json(const MetricsReport& r);

}  // namespace agc::eval
