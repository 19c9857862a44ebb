// SPDX-License-Identifier: Apache-2.0
#include "agc/eval/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>

#include "agc/csv.hpp"
#include "agc/errors.hpp"
#include "agc/eval/baselines.hpp"
#include "agc/model/network.hpp"
#include "agc/parallel.hpp"

namespace agc::eval {

std::string to_string(Predictor p) {
  switch (p) {
    case Predictor::Model: return "model";
    case Predictor::Ha: return "ha";
    case Predictor::Naive: return "naive";
    case Predictor::Rolling: return "rolling";
    case Predictor::Direct: return "direct";
  }
  throw InternalError("unknown predictor");
}

std::vector<Predictor> parse_predictors(const std::string& list) {
  std::vector<Predictor> out;
  for (const auto& name : csv::split(list)) {
    std::optional<Predictor> p;
    for (auto c : {Predictor::Model, Predictor::Ha, Predictor::Naive, Predictor::Rolling, Predictor::Direct}) {
      if (name == to_string(c)) p = c;
    }
    if (!p) throw ValidationError("unknown predictor '" + name + "' (expected model, ha, naive, rolling, direct)");
    if (std::find(out.begin(), out.end(), *p) == out.end()) out.push_back(*p);
  }
  if (out.empty()) throw ValidationError("no predictors selected");
  return out;
}

const MetricsRow& MetricsReport::find(const std::string& predictor, std::size_t horizon) const {
  for (const auto& r : rows) {
    if (r.predictor == predictor && r.horizon == horizon) return r;
  }
  throw ReferenceError("no metrics for " + predictor + " at horizon " + std::to_string(horizon));
}

namespace {

template <class Fn>
std::vector<std::vector<double>> map_samples(std::span<const features::Sample> samples, std::size_t threads,
                                             Fn&& fn) {
  std::vector<std::vector<double>> out(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) { out[i] = fn(samples[i]); });
  return out;
}

std::vector<std::vector<double>> predict_with(const EvalContext& ctx, std::span<const features::Sample> samples,
                                              Predictor predictor, std::vector<std::string>* warnings) {
  const std::size_t n = samples.empty() ? 1 : samples.front().horizon();
  switch (predictor) {
    case Predictor::Model:
      if (!ctx.params || !ctx.normalizer) throw ValidationError("the model predictor needs a checkpoint");
      return map_samples(samples, ctx.threads, [&](const features::Sample& s) {
        return model::predict_kmh(*ctx.params, *ctx.normalizer, s);
      });
    case Predictor::Ha:
      if (!ctx.stats) throw ValidationError("the ha predictor needs historical stats");
      return map_samples(samples, ctx.threads,
                         [&](const features::Sample& s) { return baseline_ha(*ctx.stats, s); });
    case Predictor::Naive:
      return map_samples(samples, ctx.threads, [](const features::Sample& s) { return baseline_naive(s); });
    case Predictor::Rolling:
    case Predictor::Direct: {
      if (!ctx.train) throw ValidationError("linear predictors need the training series");
      const std::size_t m = samples.empty() ? 0 : samples.front().steps() - 1;
      const auto b = LinearBaseline::fit(*ctx.train, m, n,
                                         predictor == Predictor::Rolling ? LinearStrategy::Rolling
                                                                         : LinearStrategy::Direct);
      if (warnings) warnings->insert(warnings->end(), b.warnings().begin(), b.warnings().end());
      return map_samples(samples, ctx.threads, [&](const features::Sample& s) { return b.predict(s); });
    }
  }
  throw InternalError("unknown predictor");
}

}  // namespace

std::vector<std::vector<double>> predict_all(const EvalContext& ctx, std::span<const features::Sample> samples,
                                             Predictor predictor) {
  return predict_with(ctx, samples, predictor, nullptr);
}

MetricsReport evaluate_all(const EvalContext& ctx, std::span<const features::Sample> samples,
                           const std::vector<Predictor>& predictors) {
  if (samples.empty()) throw DomainError("evaluate_all: no samples");
  const std::size_t n = samples.front().horizon();
  const std::size_t m = samples.front().steps() - 1;
  for (const auto& s : samples) {
    if (s.horizon() != n || s.steps() != m + 1) {
      throw ValidationError("evaluate_all: samples mix window shapes");
    }
  }
  if (!ctx.stats) throw ValidationError("evaluate_all needs historical stats for the day layout");
  const std::size_t slots = ctx.stats->slots_per_day();
  const std::size_t w = std::max(ctx.window_horizon, n);
  const std::size_t lo = m + w;
  const std::size_t hi = slots >= w ? slots - w : 0;

  MetricsReport report;
  for (Predictor p : predictors) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto preds = predict_with(ctx, samples, p, &report.warnings);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::vector<double> all_truth, all_pred;
    for (std::size_t j = 1; j <= n; ++j) {
      std::vector<double> truth, pred;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::size_t target = samples[i].anchor_slot + j;
        if (target < lo || target > hi) continue;
        truth.push_back(samples[i].targets[j - 1]);
        pred.push_back(preds[i][j - 1]);
      }
      if (truth.empty()) {
        throw DomainError("no targets inside the evaluation window [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
      }
      const auto e = metrics(truth, pred);
      report.rows.push_back({to_string(p), j, e.mape_pct, e.mae, e.rmse, e.count, seconds});
      all_truth.insert(all_truth.end(), truth.begin(), truth.end());
      all_pred.insert(all_pred.end(), pred.begin(), pred.end());
    }
    const auto e = metrics(all_truth, all_pred);
    report.rows.push_back({to_string(p), 0, e.mape_pct, e.mae, e.rmse, e.count, seconds});
  }
  return report;
}

void write_metrics_csv(const MetricsReport& r, const std::filesystem::path& path, bool include_timing) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "predictor,horizon,mape_pct,mae_kmh,rmse_kmh,q,seconds\n";
  for (const auto& row : r.rows) {
    out << row.predictor << ',' << (row.horizon == 0 ? std::string("all") : std::to_string(row.horizon)) << ','
        << csv::format_double(row.mape_pct) << ',' << csv::format_double(row.mae_kmh) << ','
        << csv::format_double(row.rmse_kmh) << ',' << row.q << ','
        << csv::format_double(include_timing ? row.seconds : 0.0) << '\n';
  }
}

nlohmann::json to_json(const MetricsReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"predictor", row.predictor},
                    {"horizon", row.horizon == 0 ? nlohmann::json("all") : nlohmann::json(row.horizon)},
                    {"mape_pct", row.mape_pct},
                    {"mae_kmh", row.mae_kmh},
                    {"rmse_kmh", row.rmse_kmh},
                    {"q", row.q},
                    {"seconds", row.seconds}});
  }
  return {{"rows", rows}, {"warnings", r.warnings}};
}

}  // namespace agc::eval
