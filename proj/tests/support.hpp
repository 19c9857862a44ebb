// SPDX-License-Identifier: Apache-2.0
#pragma once

// Shared helpers for the test programs.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "agc/numcore/tensor.hpp"

namespace agc::testing {

inline numcore::Tensor random_vector(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  auto t = numcore::Tensor::vector(n);
  for (auto& v : t.values()) v = u(rng);
  return t;
}

inline numcore::Tensor random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  auto t = numcore::Tensor::matrix(r, c);
  for (auto& v : t.values()) v = u(rng);
  return t;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("agcseq-test-" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace agc::testing

#include "agc/graph/road_graph.hpp"

namespace agc::testing {

/// Random digraph on n links named "n0".."n{n-1}", each ordered pair an
/// edge with probability p.
inline graph::RoadGraph random_digraph(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("n" + std::to_string(i));
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && coin(rng)) edges.emplace_back(ids[i], ids[j]);
    }
  }
  return graph::build_graph(ids, edges);
}

/// Floyd-Warshall hop counts; SIZE_MAX when unreachable.
inline std::vector<std::size_t> floyd_hops(const graph::RoadGraph& g) {
  const std::size_t n = g.link_count();
  const std::size_t inf = SIZE_MAX / 4;
  std::vector<std::size_t> d(n * n, inf);
  for (std::size_t i = 0; i < n; ++i) {
    d[i * n + i] = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (g.adjacent(i, j)) d[i * n + j] = 1;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
    }
  }
  for (auto& v : d) {
    if (v >= inf) v = SIZE_MAX;
  }
  return d;
}

/// Oracle masks: cumulative from shortest hops, exact from the boolean
/// matrix power A^K with the diagonal forced on.
inline std::vector<std::uint8_t> oracle_mask(const graph::RoadGraph& g, std::size_t k, graph::HopMode mode) {
  const std::size_t n = g.link_count();
  std::vector<std::uint8_t> out(n * n, 0);
  if (mode == graph::HopMode::Cumulative) {
    const auto d = floyd_hops(g);
    for (std::size_t e = 0; e < n * n; ++e) out[e] = d[e] <= k ? 1 : 0;
    return out;
  }
  std::vector<std::uint8_t> p(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 1;
  for (std::size_t step = 0; step < k; ++step) {
    std::vector<std::uint8_t> next(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t m = 0; m < n; ++m) {
        if (!p[i * n + m]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (g.adjacent(m, j)) next[i * n + j] = 1;
        }
      }
    }
    p = std::move(next);
  }
  for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 1;
  return p;
}

}  // namespace agc::testing
