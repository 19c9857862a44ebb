// SPDX-License-Identifier: Apache-2.0
#include "agc/graph/road_graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>

#include "agc/csv.hpp"
#include "agc/errors.hpp"

namespace agc::graph {

std::size_t RoadGraph::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ReferenceError("unknown link id '" + id + "'");
  return it->second;
}

std::optional<std::size_t> RoadGraph::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<std::size_t, std::size_t>> RoadGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < out_.size(); ++i) {
    for (std::size_t j : out_[i]) out.emplace_back(i, j);
  }
  return out;
}

RoadGraph build_graph(const std::vector<std::string>& links,
                      const std::vector<std::pair<std::string, std::string>>& edges) {
  RoadGraph g;
  g.ids_ = links;
  for (std::size_t i = 0; i < links.size(); ++i) {
    if (links[i].empty()) throw ValidationError("empty link id at position " + std::to_string(i));
    if (!g.index_.emplace(links[i], i).second) {
      throw ValidationError("duplicate link id '" + links[i] + "'");
    }
  }
  const std::size_t n = links.size();
  g.adj_.assign(n * n, 0);
  g.out_.assign(n, {});
  for (const auto& [from, to] : edges) {
    const std::size_t i = g.index_of(from);
    const std::size_t j = g.index_of(to);
    if (i == j) throw ValidationError("self-loop on link '" + from + "'");
    if (!g.adj_[i * n + j]) {
      g.adj_[i * n + j] = 1;
      g.out_[i].push_back(j);
    }
  }
  for (auto& row : g.out_) std::sort(row.begin(), row.end());
  return g;
}

RoadGraph ring_graph(std::size_t n) {
  if (n == 0) throw ValidationError("ring size must be positive");
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("L" + std::to_string(i));
  if (n > 1) {
    for (std::size_t i = 0; i < n; ++i) edges.emplace_back(ids[i], ids[(i + 1) % n]);
  }
  return build_graph(ids, edges);
}

namespace {

std::vector<std::optional<std::size_t>> bfs_from(const RoadGraph& g, std::size_t src) {
  std::vector<std::optional<std::size_t>> dist(g.link_count());
  std::deque<std::size_t> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : g.downstream(u)) {
      if (!dist[v]) {
        dist[v] = *dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

std::optional<std::size_t> hop_distance(const RoadGraph& g, std::size_t i, std::size_t j) {
  if (i >= g.link_count() || j >= g.link_count()) {
    throw ReferenceError("link index out of range");
  }
  return bfs_from(g, i)[j];
}

std::vector<std::optional<std::size_t>> all_hop_distances(const RoadGraph& g) {
  const std::size_t n = g.link_count();
  std::vector<std::optional<std::size_t>> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = bfs_from(g, i);
    std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(i * n));
  }
  return out;
}

std::string to_string(HopMode mode) { return mode == HopMode::Exact ? "exact" : "cumulative"; }

HopMode parse_hop_mode(const std::string& text) {
  if (text == "cumulative") return HopMode::Cumulative;
  if (text == "exact") return HopMode::Exact;
  throw ValidationError("hop mode must be 'cumulative' or 'exact', got '" + text + "'");
}

HopMask::HopMask(std::size_t order, HopMode mode, std::size_t link_count,
                 std::vector<std::uint8_t> bits)
    : order_(order), mode_(mode), n_(link_count), bits_(std::move(bits)), rows_(link_count) {
  if (bits_.size() != n_ * n_) throw DimensionError("hop mask size does not match link count");
  for (std::size_t i = 0; i < n_; ++i) {
    if (!bits_[i * n_ + i]) throw ValidationError("hop mask diagonal must be 1");
    for (std::size_t j = 0; j < n_; ++j) {
      if (bits_[i * n_ + j] > 1) throw ValidationError("hop mask entries must be 0 or 1");
      if (bits_[i * n_ + j]) rows_[i].push_back(j);
    }
  }
}

HopMask hop_mask(const RoadGraph& g, std::size_t order, HopMode mode) {
  const std::size_t n = g.link_count();
  std::vector<std::uint8_t> bits(n * n, 0);
  if (mode == HopMode::Cumulative) {
    const auto dist = all_hop_distances(g);
    for (std::size_t k = 0; k < n * n; ++k) bits[k] = dist[k] && *dist[k] <= order;
  } else {
    // Boolean K-th power of A; nonzero pattern of the integer power.
    std::vector<std::uint8_t> power(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) power[i * n + i] = 1;
    for (std::size_t step = 0; step < order; ++step) {
      std::vector<std::uint8_t> next(n * n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          if (!power[i * n + k]) continue;
          for (std::size_t j : g.downstream(k)) next[i * n + j] = 1;
        }
      }
      power = std::move(next);
    }
    bits = std::move(power);
    for (std::size_t i = 0; i < n; ++i) bits[i * n + i] = 1;
  }
  return HopMask(order, mode, n, std::move(bits));
}

RoadGraph load_graph_csv(const std::filesystem::path& links, const std::filesystem::path& edges) {
  const auto nodes = csv::read(links, {"link_id"});
  const auto arcs = csv::read(edges, {"from_link", "to_link"});
  std::vector<std::string> ids;
  for (const auto& row : nodes.rows) ids.push_back(row[0]);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& row : arcs.rows) pairs.emplace_back(row[0], row[1]);
  return build_graph(ids, pairs);
}

void write_graph_csv(const RoadGraph& g, const std::filesystem::path& links,
                     const std::filesystem::path& edges) {
  std::ofstream ln(links);
  ln << "link_id\n";
  for (const auto& id : g.link_ids()) ln << id << '\n';
  std::ofstream ed(edges);
  ed << "from_link,to_link\n";
  for (auto [i, j] : g.edges()) ed << g.link_id(i) << ',' << g.link_id(j) << '\n';
  if (!ln || !ed) throw FormatError("failed writing graph files");
}

}  // namespace agc::graph
