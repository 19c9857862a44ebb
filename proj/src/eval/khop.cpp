// SPDX-License-Identifier: Apache-2.0
#include "agc/eval/khop.hpp"

#include <fstream>

#include "agc/csv.hpp"
#include "agc/errors.hpp"
#include "agc/eval/evaluate.hpp"
#include "agc/train/dataset.hpp"

namespace agc::eval {

std::vector<KhopRow> khop_sweep(const data::SpeedSeries& series, const graph::RoadGraph& g,
                                std::size_t train_days, const train::TrainConfig& base,
                                const std::vector<std::size_t>& ks, std::size_t window_horizon,
                                const std::function<void(const std::string&)>& log) {
  if (ks.empty()) throw ValidationError("k-hop sweep needs at least one K");
  std::vector<KhopRow> rows;
  for (std::size_t k : ks) {
    train::TrainConfig c = base;
    c.k = k;
    const auto d = train::prepare_dataset(series, g, train_days, c);
    const auto test = train::test_samples(d, c.lookback, c.horizon);
    if (test.empty()) throw ValidationError("k-hop sweep needs at least one test day");
    const auto fitted = train::fit(model::init_params(d.mask, c.hidden, c.seed), d.normalizer, d.fit,
                                   d.validation, c, [&](const train::EpochRecord& r) {
                                     if (log) {
                                       log("k=" + std::to_string(k) + " epoch " + std::to_string(r.epoch) +
                                           " loss " + csv::format_double(r.train_loss) + " val_mae " +
                                           csv::format_double(r.val_mae));
                                     }
                                   });
    EvalContext ctx;
    ctx.params = &fitted.params;
    ctx.normalizer = &d.normalizer;
    ctx.stats = &d.stats;
    ctx.window_horizon = window_horizon;
    ctx.threads = c.threads;
    const auto report = evaluate_all(ctx, test, {Predictor::Model});
    for (std::size_t j = 1; j <= c.horizon; ++j) {
      const auto& r = report.find("model", j);
      rows.push_back({k, j, r.mape_pct, r.mae_kmh, r.rmse_kmh, r.q});
    }
  }
  return rows;
}

void write_khop_csv(const std::vector<KhopRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "k,horizon,mape_pct,mae_kmh,rmse_kmh,q\n";
  for (const auto& r : rows) {
    out << r.k << ',' << r.horizon << ',' << csv::format_double(r.mape_pct) << ','
        << csv::format_double(r.mae_kmh) << ',' << csv::format_double(r.rmse_kmh) << ',' << r.q << '\n';
  }
}

}  // namespace agc::eval
