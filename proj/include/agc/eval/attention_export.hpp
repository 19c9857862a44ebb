// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "agc/data/time_grid.hpp"
#include "agc/features/normalizer.hpp"
#include "agc/features/samples.hpp"
#include "agc/model/params.hpp"
#include "agc/numcore/tensor.hpp"

namespace agc::eval {

struct AttentionRecord {
  std::size_t link = 0;
  std::size_t day = 0;
  std::size_t anchor_slot = 0;
  numcore::Tensor weights;  // n x (m+1); column i weighs the state i steps before the anchor
};

std::vector<AttentionRecord> compute_attention(const model::ModelParams& p, const features::Normalizer& norm,
                                               std::span<const features::Sample> samples,
                                               std::size_t threads = 1);

/// Header `link_id,anchor_timestamp,decoder_step,enc_0..enc_m`, one row per
/// decoder step. `grid` must be the grid the samples' days index into.
void write_attention_csv(const std::vector<AttentionRecord>& records, const data::TimeGrid& grid,
                         const std::vector<std::string>& link_ids, const std::filesystem::path& path);

/// Mean over records and decoder steps of the weight on the `recent`
/// newest encoder positions.
double mean_recent_mass(const std::vector<AttentionRecord>& records, std::size_t recent);

}  // namespace agc::eval
