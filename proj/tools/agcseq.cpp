// SPDX-License-Identifier: Apache-2.0
// agcseq: synthetic data, training, prediction and evaluation front end.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "agc/csv.hpp"
#include "agc/data/csv_io.hpp"
#include "agc/data/synthetic.hpp"
#include "agc/errors.hpp"
#include "agc/eval/attention_export.hpp"
#include "agc/eval/evaluate.hpp"
#include "agc/eval/khop.hpp"
#include "agc/features/stats.hpp"
#include "agc/model/checkpoint.hpp"
#include "agc/model/network.hpp"
#include "agc/numcore/kernels.hpp"
#include "agc/train/dataset.hpp"
#include "agc/version.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace agc;

namespace {

// Bad flag values detected after parsing; reported like CLI11 errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphFlags {
  std::size_t ring = 0;
  std::string links, edges;

  void add(CLI::App* app) {
    app->add_option("--ring", ring, "Directed ring of N links L0..L{N-1}");
    app->add_option("--links", links, "Link CSV (header link_id)");
    app->add_option("--edges", edges, "Edge CSV (header from_link,to_link)");
  }
  graph::RoadGraph resolve() const {
    if (ring > 0 && (!links.empty() || !edges.empty())) throw UsageError("give either --ring or --links/--edges");
    if (ring > 0) return graph::ring_graph(ring);
    if (links.empty() || edges.empty()) throw UsageError("a graph is required: --ring N or --links and --edges");
    return graph::load_graph_csv(links, edges);
  }
  json to_json() const {
    if (ring > 0) return {{"ring", ring}};
    return {{"links", links}, {"edges", edges}};
  }
};

struct ModelFlags {
  train::TrainConfig cfg;
  std::string optimizer = "adam";
  std::string hop_mode = "cumulative";
  std::optional<int> horizon_min;
  bool no_clip = false;

  void add(CLI::App* app, bool with_k) {
    app->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    if (with_k) app->add_option("--k", cfg.k, "Hop order K of the graph convolution")->capture_default_str();
    app->add_option("--hop-mode", hop_mode, "cumulative or exact")->capture_default_str();
    app->add_option("--m", cfg.lookback, "Look-back m (window of m+1 slots)")->capture_default_str();
    app->add_option("--n", cfg.horizon, "Horizon in slots")->capture_default_str();
    app->add_option("--horizon-min", horizon_min, "Horizon in minutes: 5, 15 or 30 (sets --n)");
    app->add_option("--hidden", cfg.hidden, "GRU hidden size")->capture_default_str();
    app->add_option("--epochs", cfg.max_epochs, "Maximum epochs")->capture_default_str();
    app->add_option("--batch", cfg.batch_size, "Mini-batch size")->capture_default_str();
    app->add_option("--lr", cfg.learning_rate, "Learning rate")->capture_default_str();
    app->add_option("--optimizer", optimizer, "adam or sgd")->capture_default_str();
    app->add_option("--patience", cfg.patience, "Early-stop patience in epochs")->capture_default_str();
    app->add_option("--clip", cfg.clip_norm, "Global gradient-norm clip")->capture_default_str();
    app->add_flag("--no-clip", no_clip, "Disable gradient clipping");
  }
  train::TrainConfig resolve() {
    try {
      cfg.optimizer = train::parse_optimizer(optimizer);
      cfg.hop_mode = graph::parse_hop_mode(hop_mode);
    } catch (const ValidationError& e) {
      throw UsageError(e.what());
    }
    if (horizon_min) {
      switch (*horizon_min) {
        case 5: cfg.horizon = 1; break;
        case 15: cfg.horizon = 3; break;
        case 30: cfg.horizon = 6; break;
        default: throw UsageError("--horizon-min must be 5, 15 or 30");
      }
    }
    if (no_clip) cfg.clip_norm = 0.0;
    if (cfg.horizon == 0) throw UsageError("--n must be at least 1");
    if (cfg.hidden == 0) throw UsageError("--hidden must be positive");
    if (cfg.max_epochs == 0) throw UsageError("--epochs must be positive");
    if (cfg.batch_size == 0) throw UsageError("--batch must be positive");
    if (!(cfg.learning_rate > 0.0)) throw UsageError("--lr must be positive");
    if (cfg.threads == 0) throw UsageError("--threads must be positive");
    return cfg;
  }
};

struct Common {
  std::string out = "out";
  std::size_t threads = 1;

  void add(CLI::App* app) {
    app->add_option("--out", out, "Output directory")->capture_default_str();
    app->add_option("--threads", threads, "Worker threads")->capture_default_str();
  }
  fs::path dir() const {
    fs::create_directories(out);
    return out;
  }
};

void log(const std::string& msg) { std::cerr << msg << '\n'; }

void write_json(const json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_run(const fs::path& dir, const std::string& command, json config) {
  write_json({{"command", command},
              {"config", std::move(config)},
              {"versions",
               {{"agcseq", kVersion},
                {"checkpoint_format", model::kCheckpointVersion},
                {"kernels", numcore::kernels::active().name}}}},
             dir / "run.json");
}

data::SpeedSeries load_series(const std::string& path, const graph::RoadGraph& g) {
  const auto grid = data::infer_grid(path);
  auto loaded = data::load_csv(path, g, grid);
  if (loaded.duplicate_rows) log("warning: " + std::to_string(loaded.duplicate_rows) + " duplicate rows (last kept)");
  const std::size_t missing = loaded.series.missing_count();
  if (missing) log("filling " + std::to_string(missing) + " missing cells by interpolation");
  return data::interpolate_missing(loaded.series);
}

std::size_t resolve_train_days(std::optional<std::size_t> flag, std::size_t days) {
  if (!flag) return train::default_train_days(days);
  if (*flag == 0 || *flag > days) {
    throw UsageError("--train-days must be in [1, " + std::to_string(days) + "]");
  }
  return *flag;
}

std::size_t need_test_days(std::size_t train_days, std::size_t days) {
  if (train_days >= days) throw UsageError("--train-days leaves no test days");
  return days - train_days;
}

// --- subcommands -------------------------------------------------------------

struct GenerateCmd {
  GraphFlags graph;
  Common common;
  std::size_t days = 0;
  std::uint64_t seed = 0;
  std::string params_file;
  data::SyntheticParams p;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("generate", "Write a synthetic speed CSV plus its parameter sidecar");
    graph.add(c);
    common.add(c);
    c->add_option("--days", days, "Number of days")->required();
    c->add_option("--seed", seed, "Random seed")->capture_default_str();
    c->add_option("--params", params_file, "JSON file of generator parameters");
    c->add_option("--noise", p.noise_sigma_kmh, "Noise standard deviation (km/h)")->capture_default_str();
    c->add_option("--wave-lag", p.wave_lag_slots, "Congestion lag per hop (slots)")->capture_default_str();
    c->add_option("--incident-rate", p.incident_rate, "Expected sudden drops per day")->capture_default_str();
    c->add_option("--start-date", p.start_date, "First day, YYYY-MM-DD")->capture_default_str();
    c->callback([this] { run(); });
  }
  void run() {
    if (days == 0) throw UsageError("--days must be at least 1");
    if (!params_file.empty()) {
      std::ifstream in(params_file);
      if (!in) throw UsageError("cannot open --params file " + params_file);
      p = data::synthetic_params_from_json(json::parse(in));
    }
    const auto g = graph.resolve();
    const auto s = data::generate_synthetic(g, days, seed, p);
    const auto dir = common.dir();
    data::write_csv(s, dir / "speeds.csv");
    write_json({{"seed", seed}, {"days", days}, {"graph", graph.to_json()}, {"params", data::to_json(p)}},
               dir / "speeds.params.json");
    graph::write_graph_csv(g, dir / "links.csv", dir / "edges.csv");
    write_run(dir, "generate",
              {{"graph", graph.to_json()}, {"days", days}, {"seed", seed}, {"params", data::to_json(p)}});
    log("wrote " + (dir / "speeds.csv").string());
  }
};

struct StatsCmd {
  GraphFlags graph;
  Common common;
  std::string data;
  std::optional<std::size_t> train_days;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("stats", "Historical per-slot statistics of the training days");
    graph.add(c);
    common.add(c);
    c->add_option("--data", data, "Speed CSV")->required();
    c->add_option("--train-days", train_days, "Leading days used as training data");
    c->callback([this] { run(); });
  }
  void run() {
    const auto g = graph.resolve();
    const auto s = load_series(data, g);
    const std::size_t td = resolve_train_days(train_days, s.grid().day_count());
    const auto stats = features::compute_stats(s.day_range(0, td));
    const auto dir = common.dir();
    features::write_stats_csv(stats, dir / "stats.csv");
    write_run(dir, "stats", {{"graph", graph.to_json()}, {"data", data}, {"train_days", td}});
  }
};

struct TrainCmd {
  GraphFlags graph;
  Common common;
  ModelFlags model;
  std::string data;
  std::string checkpoint;
  std::optional<std::size_t> train_days;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("train", "Fit the model and write a checkpoint and history");
    graph.add(c);
    common.add(c);
    model.add(c, true);
    c->add_option("--data", data, "Speed CSV")->required();
    c->add_option("--train-days", train_days, "Leading days used for training (last one validates)");
    c->add_option("--checkpoint", checkpoint, "Checkpoint path (default <out>/checkpoint.json)");
    c->callback([this] { run(); });
  }
  void run() {
    auto cfg = model.resolve();
    cfg.threads = common.threads;
    const auto g = graph.resolve();
    const auto dir = common.dir();
    const auto s = load_series(data, g);
    const std::size_t td = resolve_train_days(train_days, s.grid().day_count());
    const auto d = train::prepare_dataset(s, g, td, cfg);
    for (const auto& w : d.warnings) log("warning: " + w);
    log("training on " + std::to_string(d.fit.size()) + " samples, validating on " +
        std::to_string(d.validation.size()));
    const auto result = train::fit(model::init_params(d.mask, cfg.hidden, cfg.seed), d.normalizer, d.fit,
                                   d.validation, cfg, [](const train::EpochRecord& r) {
                                     log("epoch " + std::to_string(r.epoch) + " loss " +
                                         csv::format_double(r.train_loss) + " val_mae " +
                                         csv::format_double(r.val_mae));
                                   });
    json hp = train::to_json(cfg);
    hp["train_days"] = td;
    hp["best_epoch"] = result.best_epoch;
    const fs::path ckpt = checkpoint.empty() ? dir / "checkpoint.json" : fs::path(checkpoint);
    model::save_checkpoint({g.link_ids(), result.params, d.normalizer, hp}, ckpt);
    train::write_history_csv(result.history, dir / "history.csv");
    json run = train::to_json(cfg);
    run["graph"] = graph.to_json();
    run["data"] = data;
    run["train_days"] = td;
    run["checkpoint"] = ckpt.string();
    write_run(dir, "train", run);
    log("best epoch " + std::to_string(result.best_epoch) + ", wrote " + ckpt.string());
  }
};

// Shared by predict / evaluate / attention: a checkpoint plus the data it applies to.
struct Loaded {
  graph::RoadGraph g;
  data::SpeedSeries series;
  std::size_t train_days = 0;
  std::optional<model::Checkpoint> ckpt;
  train::TrainConfig cfg;
  train::Dataset dataset;
  std::vector<features::Sample> test;
};

Loaded load_for_eval(const GraphFlags& graph, const std::string& data, const std::string& checkpoint,
                     std::optional<std::size_t> train_days, train::TrainConfig cfg) {
  Loaded L;
  L.g = graph.resolve();
  L.series = load_series(data, L.g);
  const std::size_t days = L.series.grid().day_count();
  std::optional<std::size_t> td = train_days;
  if (!checkpoint.empty()) {
    L.ckpt = model::load_checkpoint(checkpoint, L.g);
    const auto& hp = L.ckpt->hyperparameters;
    const std::size_t threads = cfg.threads;
    cfg = train::train_config_from_json(hp);
    cfg.threads = threads;
    if (!td && hp.contains("train_days")) td = hp["train_days"].get<std::size_t>();
    cfg.k = L.ckpt->params.mask.order();
    cfg.hop_mode = L.ckpt->params.mask.mode();
  }
  L.train_days = resolve_train_days(td, days);
  need_test_days(L.train_days, days);
  L.cfg = cfg;
  L.dataset = train::prepare_dataset(L.series, L.g, L.train_days, cfg);
  if (L.ckpt && !(L.ckpt->normalizer == L.dataset.normalizer)) {
    log("warning: normalizer recomputed from the data differs from the checkpoint's; using the checkpoint's");
  }
  L.test = train::test_samples(L.dataset, cfg.lookback, cfg.horizon);
  return L;
}

struct PredictCmd {
  GraphFlags graph;
  Common common;
  std::string data, checkpoint;
  std::optional<std::size_t> train_days;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("predict", "Forecast every test (link, anchor) in km/h");
    graph.add(c);
    common.add(c);
    c->add_option("--data", data, "Speed CSV")->required();
    c->add_option("--checkpoint", checkpoint, "Checkpoint from train")->required();
    c->add_option("--train-days", train_days, "Training days (default: as recorded in the checkpoint)");
    c->callback([this] { run(); });
  }
  void run() {
    train::TrainConfig base;
    base.threads = common.threads;
    const auto L = load_for_eval(graph, data, checkpoint, train_days, base);
    eval::EvalContext ctx;
    ctx.params = &L.ckpt->params;
    ctx.normalizer = &L.ckpt->normalizer;
    ctx.threads = common.threads;
    const auto preds = eval::predict_all(ctx, L.test, eval::Predictor::Model);
    const auto dir = common.dir();
    std::ofstream out(dir / "predictions.csv");
    if (!out) throw std::runtime_error("cannot write predictions.csv");
    out << "link_id,anchor_timestamp,horizon,target_timestamp,predicted_kmh,observed_kmh\n";
    const auto& grid = L.dataset.test.grid();
    for (std::size_t i = 0; i < L.test.size(); ++i) {
      const auto& s = L.test[i];
      for (std::size_t j = 0; j < s.horizon(); ++j) {
        out << L.g.link_id(s.link) << ',' << grid.timestamp(s.day, s.anchor_slot) << ',' << (j + 1) << ','
            << grid.timestamp(s.day, s.anchor_slot + j + 1) << ',' << csv::format_double(preds[i][j]) << ','
            << csv::format_double(s.targets[j]) << '\n';
      }
    }
    write_run(dir, "predict",
              {{"graph", graph.to_json()}, {"data", data}, {"checkpoint", checkpoint}, {"train_days", L.train_days}});
  }
};

struct EvaluateCmd {
  GraphFlags graph;
  Common common;
  ModelFlags model;
  std::string data, checkpoint;
  std::string predictors = "model,ha,naive,rolling,direct";
  std::optional<std::size_t> train_days;
  std::size_t window = 0;
  bool timing = false;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("evaluate", "Score the model and baselines on the test days");
    graph.add(c);
    common.add(c);
    c->add_option("--data", data, "Speed CSV")->required();
    c->add_option("--checkpoint", checkpoint, "Checkpoint (needed for the model predictor)");
    c->add_option("--predictors", predictors, "Comma list of model, ha, naive, rolling, direct")
        ->capture_default_str();
    c->add_option("--train-days", train_days, "Training days (default: from the checkpoint)");
    c->add_option("--m", model.cfg.lookback, "Look-back without a checkpoint")->capture_default_str();
    c->add_option("--n", model.cfg.horizon, "Horizon without a checkpoint")->capture_default_str();
    c->add_option("--horizon-min", model.horizon_min, "Horizon in minutes: 5, 15 or 30");
    c->add_option("--eval-window", window,
                  "Score targets only in slots [m+W, S-W]; W defaults to n")
        ->capture_default_str();
    c->add_flag("--timing", timing, "Record wall-clock seconds in the CSV");
    c->callback([this] { run(); });
  }
  void run() {
    std::vector<eval::Predictor> preds;
    try {
      preds = eval::parse_predictors(predictors);
    } catch (const ValidationError& e) {
      throw UsageError(e.what());
    }
    const bool wants_model = std::find(preds.begin(), preds.end(), eval::Predictor::Model) != preds.end();
    if (wants_model && checkpoint.empty()) throw UsageError("the model predictor needs --checkpoint");
    auto cfg = model.resolve();
    cfg.threads = common.threads;
    const auto L = load_for_eval(graph, data, checkpoint, train_days, cfg);
    eval::EvalContext ctx;
    if (L.ckpt) {
      ctx.params = &L.ckpt->params;
      ctx.normalizer = &L.ckpt->normalizer;
    }
    ctx.stats = &L.dataset.stats;
    ctx.train = &L.dataset.train;
    ctx.window_horizon = window;
    ctx.threads = common.threads;
    const auto report = eval::evaluate_all(ctx, L.test, preds);
    for (const auto& w : report.warnings) log("warning: " + w);
    const auto dir = common.dir();
    eval::write_metrics_csv(report, dir / "metrics.csv", timing);
    write_json(eval::to_json(report), dir / "metrics.json");
    json run = train::to_json(L.cfg);
    run["graph"] = graph.to_json();
    run["data"] = data;
    run["checkpoint"] = checkpoint;
    run["predictors"] = predictors;
    run["train_days"] = L.train_days;
    run["eval_window"] = window;
    write_run(dir, "evaluate", run);
  }
};

struct AttentionCmd {
  GraphFlags graph;
  Common common;
  std::string data, checkpoint;
  std::vector<std::string> links;
  std::vector<std::string> anchors;
  std::optional<std::size_t> train_days;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("attention", "Export attention matrices for test samples");
    graph.add(c);
    common.add(c);
    c->add_option("--data", data, "Speed CSV")->required();
    c->add_option("--checkpoint", checkpoint, "Checkpoint from train")->required();
    c->add_option("--train-days", train_days, "Training days (default: from the checkpoint)");
    c->add_option("--link", links, "Only these link ids (repeatable)");
    c->add_option("--anchor", anchors, "Only these anchor timestamps (repeatable)");
    c->callback([this] { run(); });
  }
  void run() {
    train::TrainConfig base;
    base.threads = common.threads;
    const auto L = load_for_eval(graph, data, checkpoint, train_days, base);
    const auto& grid = L.dataset.test.grid();
    std::vector<std::size_t> link_idx;
    for (const auto& id : links) link_idx.push_back(L.g.index_of(id));
    std::vector<features::Sample> chosen;
    for (const auto& s : L.test) {
      if (!link_idx.empty() && std::find(link_idx.begin(), link_idx.end(), s.link) == link_idx.end()) continue;
      if (!anchors.empty() &&
          std::find(anchors.begin(), anchors.end(), grid.timestamp(s.day, s.anchor_slot)) == anchors.end()) {
        continue;
      }
      chosen.push_back(s);
    }
    if (chosen.empty()) throw ValidationError("no test samples match the --link/--anchor selection");
    const auto records = eval::compute_attention(L.ckpt->params, L.ckpt->normalizer, chosen, common.threads);
    const auto dir = common.dir();
    eval::write_attention_csv(records, grid, L.g.link_ids(), dir / "attention.csv");
    write_run(dir, "attention",
              {{"graph", graph.to_json()},
               {"data", data},
               {"checkpoint", checkpoint},
               {"train_days", L.train_days},
               {"links", links},
               {"anchors", anchors}});
  }
};

struct KhopCmd {
  GraphFlags graph;
  Common common;
  ModelFlags model;
  std::string data;
  std::string ks = "0,1,2,3";
  std::optional<std::size_t> train_days;
  std::size_t window = 0;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("khop-sweep", "Train one model per K and score each on the test days");
    graph.add(c);
    common.add(c);
    model.add(c, false);
    c->add_option("--data", data, "Speed CSV")->required();
    c->add_option("--k", ks, "Comma list of hop orders")->capture_default_str();
    c->add_option("--train-days", train_days, "Leading days used for training");
    c->add_option("--eval-window", window, "Score targets only in slots [m+W, S-W]")->capture_default_str();
    c->callback([this] { run(); });
  }
  void run() {
    auto cfg = model.resolve();
    cfg.threads = common.threads;
    std::vector<std::size_t> klist;
    for (const auto& t : csv::split(ks)) {
      try {
        const long long v = csv::parse_int(t, "--k");
        if (v < 0) throw FormatError("negative");
        klist.push_back(static_cast<std::size_t>(v));
      } catch (const FormatError&) {
        throw UsageError("--k must be a comma list of non-negative integers");
      }
    }
    const auto g = graph.resolve();
    const auto dir = common.dir();
    const auto s = load_series(data, g);
    const std::size_t td = resolve_train_days(train_days, s.grid().day_count());
    need_test_days(td, s.grid().day_count());
    const auto rows = eval::khop_sweep(s, g, td, cfg, klist, window, log);
    eval::write_khop_csv(rows, dir / "khop.csv");
    json run = train::to_json(cfg);
    run["graph"] = graph.to_json();
    run["data"] = data;
    run["ks"] = klist;
    run["train_days"] = td;
    run["eval_window"] = window;
    write_run(dir, "khop-sweep", run);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"agcseq: graph-convolutional sequence-to-sequence traffic speed forecasting"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  GenerateCmd generate;
  StatsCmd stats;
  TrainCmd train_cmd;
  PredictCmd predict;
  EvaluateCmd evaluate;
  AttentionCmd attention;
  KhopCmd khop;
  generate.add(app);
  stats.add(app);
  train_cmd.add(app);
  predict.add(app);
  evaluate.add(app);
  attention.add(app);
  khop.add(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
