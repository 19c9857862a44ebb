// SPDX-License-Identifier: Apache-2.0
#include "agc/train/trainer.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "agc/csv.hpp"
#include "agc/errors.hpp"
#include "agc/model/network.hpp"
#include "agc/parallel.hpp"

namespace agc::train {

using features::Normalizer;
using features::Sample;
using model::Gradients;
using model::ModelParams;
using nlohmann::json;

void validate(const TrainConfig& c) {
  auto positive = [](std::size_t v, const char* name) {
    if (v == 0) throw ValidationError(std::string(name) + " must be positive");
  };
  positive(c.batch_size, "batch size");
  positive(c.max_epochs, "epochs");
  positive(c.hidden, "hidden size");
  positive(c.horizon, "horizon n");
  positive(c.threads, "threads");
  if (!(c.learning_rate > 0.0) || !std::isfinite(c.learning_rate)) {
    throw ValidationError("learning rate must be positive and finite");
  }
  if (!(c.clip_norm >= 0.0)) throw ValidationError("clip norm must be >= 0");
}

json to_json(const TrainConfig& c) {
  return {{"optimizer", to_string(c.optimizer)},
          {"learning_rate", c.learning_rate},
          {"batch_size", c.batch_size},
          {"max_epochs", c.max_epochs},
          {"patience", c.patience},
          {"seed", c.seed},
          {"hidden", c.hidden},
          {"k", c.k},
          {"hop_mode", graph::to_string(c.hop_mode)},
          {"m", c.lookback},
          {"n", c.horizon},
          {"clip_norm", c.clip_norm},
          {"threads", c.threads}};
}

TrainConfig train_config_from_json(const json& j) {
  TrainConfig c;
  c.optimizer = parse_optimizer(j.value("optimizer", to_string(c.optimizer)));
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.max_epochs = j.value("max_epochs", c.max_epochs);
  c.patience = j.value("patience", c.patience);
  c.seed = j.value("seed", c.seed);
  c.hidden = j.value("hidden", c.hidden);
  c.k = j.value("k", c.k);
  c.hop_mode = graph::parse_hop_mode(j.value("hop_mode", graph::to_string(c.hop_mode)));
  c.lookback = j.value("m", c.lookback);
  c.horizon = j.value("n", c.horizon);
  c.clip_norm = j.value("clip_norm", c.clip_norm);
  c.threads = j.value("threads", c.threads);
  return c;
}

std::vector<std::vector<std::size_t>> minibatch_iter(std::size_t count, std::size_t batch_size,
                                                     std::uint64_t seed, std::size_t epoch) {
  if (batch_size == 0) throw ValidationError("batch size must be positive");
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(epoch), static_cast<std::uint32_t>(epoch >> 32)};
  std::mt19937_64 rng(seq);
  // Fisher-Yates with explicit modulo-free draws, so the order does not
  // depend on the standard library's distribution implementation.
  for (std::size_t i = count; i > 1; --i) {
    const std::uint64_t bound = i;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = rng();
    } while (r >= limit);
    std::swap(order[i - 1], order[r % bound]);
  }
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t start = 0; start < count; start += batch_size) {
    const std::size_t end = std::min(count, start + batch_size);
    batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return batches;
}

double train_epoch(ModelParams& p, Optimizer& opt, const Normalizer& norm, std::span<const Sample> samples,
                   const std::vector<std::vector<std::size_t>>& batches, const TrainConfig& c) {
  std::size_t largest = 0;
  for (const auto& b : batches) largest = std::max(largest, b.size());
  std::vector<Gradients> per_sample(largest, Gradients::zeros_like(p));
  std::vector<double> losses(largest);
  Gradients total = Gradients::zeros_like(p);
  double loss_sum = 0.0;
  std::size_t seen = 0;

  for (std::size_t b = 0; b < batches.size(); ++b) {
    const auto& batch = batches[b];
    if (batch.empty()) continue;
    parallel_for(batch.size(), c.threads, [&](std::size_t k) {
      per_sample[k].zero();
      losses[k] = model::loss_and_gradient(p, norm, samples[batch.at(k)], per_sample[k]);
    });
    total.zero();
    double batch_loss = 0.0;
    for (std::size_t k = 0; k < batch.size(); ++k) {
      total.add_scaled(per_sample[k], 1.0);
      batch_loss += losses[k];
    }
    const double inv = 1.0 / static_cast<double>(batch.size());
    total.scale(inv);
    const double gnorm = total.norm();
    if (!std::isfinite(batch_loss) || !std::isfinite(gnorm)) {
      throw TrainingError("non-finite " + std::string(std::isfinite(batch_loss) ? "gradient" : "loss") +
                          " in batch " + std::to_string(b) + " (" + std::to_string(batch.size()) +
                          " samples)");
    }
    if (c.clip_norm > 0.0 && gnorm > c.clip_norm) total.scale(c.clip_norm / gnorm);
    opt.step(p, total);
    p.enforce_mask();
    loss_sum += batch_loss;
    seen += batch.size();
  }
  return seen ? loss_sum / static_cast<double>(seen) : 0.0;
}

double mae_kmh(const ModelParams& p, const Normalizer& norm, std::span<const Sample> samples,
               std::size_t threads) {
  if (samples.empty()) throw DomainError("mae_kmh: no samples");
  std::vector<double> per(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    const auto pred = model::predict_kmh(p, norm, samples[i]);
    double acc = 0.0;
    for (std::size_t j = 0; j < pred.size(); ++j) acc += std::fabs(pred[j] - samples[i].targets[j]);
    per[i] = acc;
  });
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    total += per[i];
    count += samples[i].horizon();
  }
  return total / static_cast<double>(count);
}

FitResult fit(ModelParams initial, const Normalizer& norm, std::span<const Sample> train,
              std::span<const Sample> validation, const TrainConfig& c,
              const std::function<void(const EpochRecord&)>& on_epoch) {
  validate(c);
  if (train.empty()) throw ValidationError("no training samples");
  if (validation.empty()) throw ValidationError("no validation samples");
  FitResult result;
  ModelParams p = std::move(initial);
  p.enforce_mask();
  auto opt = make_optimizer(c.optimizer, c.learning_rate, p);
  double best = INFINITY;
  for (std::size_t epoch = 1; epoch <= c.max_epochs; ++epoch) {
    const auto batches = minibatch_iter(train.size(), c.batch_size, c.seed, epoch);
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = train_epoch(p, *opt, norm, train, batches, c);
    rec.val_mae = mae_kmh(p, norm, validation, c.threads);
    result.history.push_back(rec);
    if (on_epoch) on_epoch(rec);
    if (rec.val_mae < best || result.best_epoch == 0) {
      best = rec.val_mae;
      result.best_epoch = epoch;
      result.params = p;
    }
    if (epoch - result.best_epoch >= c.patience) break;
  }
  return result;
}

void write_history_csv(const std::vector<EpochRecord>& history, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "epoch,train_loss,val_mae\n";
  for (const auto& r : history) {
    out << r.epoch << ',' << csv::format_double(r.train_loss) << ',' << csv::format_double(r.val_mae) << '\n';
  }
}

}  // namespace agc::train
