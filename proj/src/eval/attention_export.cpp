// SPDX-License-Identifier: Apache-2.0
#include "agc/eval/attention_export.hpp"

#include <algorithm>
#include <fstream>

#include "agc/csv.hpp"
#include "agc/errors.hpp"
#include "agc/model/network.hpp"
#include "agc/parallel.hpp"

namespace agc::eval {

std::vector<AttentionRecord> compute_attention(const model::ModelParams& p, const features::Normalizer& norm,
                                               std::span<const features::Sample> samples, std::size_t threads) {
  std::vector<AttentionRecord> out(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    const auto& s = samples[i];
    out[i] = {s.link, s.day, s.anchor_slot, model::forward(p, norm, s).attention};
  });
  return out;
}

void write_attention_csv(const std::vector<AttentionRecord>& records, const data::TimeGrid& grid,
                         const std::vector<std::string>& link_ids, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const std::size_t cols = records.empty() ? 0 : records.front().weights.cols();
  out << "link_id,anchor_timestamp,decoder_step";
  for (std::size_t i = 0; i < cols; ++i) out << ",enc_" << i;
  out << '\n';
  for (const auto& r : records) {
    if (r.weights.cols() != cols) throw DimensionError("attention records mix window lengths");
    for (std::size_t j = 0; j < r.weights.rows(); ++j) {
      out << link_ids.at(r.link) << ',' << grid.timestamp(r.day, r.anchor_slot) << ',' << (j + 1);
      for (std::size_t i = 0; i < cols; ++i) out << ',' << csv::format_double(r.weights.at(j, i));
      out << '\n';
    }
  }
}

double mean_recent_mass(const std::vector<AttentionRecord>& records, std::size_t recent) {
  double total = 0.0;
  std::size_t rows = 0;
  for (const auto& r : records) {
    for (std::size_t j = 0; j < r.weights.rows(); ++j, ++rows) {
      for (std::size_t i = 0; i < std::min(recent, r.weights.cols()); ++i) total += r.weights.at(j, i);
    }
  }
  if (rows == 0) throw DomainError("mean_recent_mass: no attention rows");
  return total / static_cast<double>(rows);
}

}  // namespace agc::eval
