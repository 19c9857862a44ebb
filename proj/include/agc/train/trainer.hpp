// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "agc/features/normalizer.hpp"
#include "agc/features/samples.hpp"
#include "agc/graph/road_graph.hpp"
#include "agc/model/params.hpp"
#include "agc/train/optimizer.hpp"
#include "json.hpp"

namespace agc::train {

struct TrainConfig {
  OptimizerKind optimizer = OptimizerKind::Adam;
  double learning_rate = 1e-3;
  std::size_t batch_size = 64;
  std::size_t max_epochs = 100;
  std::size_t patience = 10;
  std::uint64_t seed = 0;
  std::size_t hidden = 64;
  std::size_t k = 1;
  graph::HopMode hop_mode = graph::HopMode::Cumulative;
  std::size_t lookback = 11;  // m
  std::size_t horizon = 1;    // n
  double clip_norm = 5.0;     // global gradient norm; 0 disables
  std::size_t threads = 1;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

/// Throws ValidationError naming the offending field.
void validate(const TrainConfig& c);
nlohmann::json to_json(const TrainConfig& c);
TrainConfig train_config_from_json(const nlohmann::json& j);

/// Shuffled index batches over [0, count), keyed by (seed, epoch); the final
/// batch may be short.
std::vector<std::vector<std::size_t>> minibatch_iter(std::size_t count, std::size_t batch_size,
                                                     std::uint64_t seed, std::size_t epoch);

/// One pass over `batches`: per batch, the mean sample loss is
/// differentiated, the gradient clipped and one optimizer step taken; w_gc
/// zeros are re-applied after each step. Per-sample gradients are summed in
/// batch order whatever the thread count. Returns the mean sample loss.
/// Throws TrainingError naming the batch on a non-finite loss or gradient.
double train_epoch(model::ModelParams& p, Optimizer& opt, const features::Normalizer& norm,
                   std::span<const features::Sample> samples,
                   const std::vector<std::vector<std::size_t>>& batches, const TrainConfig& c);

/// Mean absolute error in km/h over every target of every sample.
double mae_kmh(const model::ModelParams& p, const features::Normalizer& norm,
               std::span<const features::Sample> samples, std::size_t threads = 1);

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_mae = 0.0;

  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

struct FitResult {
  model::ModelParams params;  // snapshot at best_epoch
  std::vector<EpochRecord> history;
  std::size_t best_epoch = 0;
};

/// Trains from `initial` until max_epochs, or until `patience` epochs pass
/// without a lower validation MAE, and returns the best-validation snapshot.
FitResult fit(model::ModelParams initial, const features::Normalizer& norm,
              std::span<const features::Sample> train, std::span<const features::Sample> validation,
              const TrainConfig& c, const std::function<void(const EpochRecord&)>& on_epoch = {});

/// Header `epoch,train_loss,val_mae`.
void write_history_csv(const std::vector<EpochRecord>& history, const std::filesystem::path& path);

}  // namespace agc::train
