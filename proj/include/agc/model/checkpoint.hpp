// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "agc/features/normalizer.hpp"
#include "agc/graph/road_graph.hpp"
#include "agc/model/params.hpp"
#include "json.hpp"

namespace agc::model {

inline constexpr const char* kCheckpointFormat = "agcseq-checkpoint";
inline constexpr int kCheckpointVersion = 1;

/// Everything needed to run a trained model against a graph.
struct Checkpoint {
  std::vector<std::string> link_ids;
  ModelParams params;
  features::Normalizer normalizer;
  /// Training configuration as recorded by the trainer.
  nlohmann::json hyperparameters = nlohmann::json::object();

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

nlohmann::json to_json(const Checkpoint& c);
/// Throws FormatError on a malformed document or unknown version.
Checkpoint checkpoint_from_json(const nlohmann::json& j);

void save_checkpoint(const Checkpoint& c, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);
/// Also checks the checkpoint against `g`: same links in the same order and
/// a mask equal to the one the graph yields for the stored order and mode.
/// Throws ValidationError describing the first mismatch.
Checkpoint load_checkpoint(const std::filesystem::path& path, const graph::RoadGraph& g);
void check_compatible(const Checkpoint& c, const graph::RoadGraph& g);

}  // namespace agc::model
