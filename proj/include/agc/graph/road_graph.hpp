// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace agc::graph {

/// Directed link-connectivity graph. adjacency(i, j) is true when link i
/// feeds link j along the driving direction. Link index order is the
/// canonical ordering for every per-link vector in the library.
class RoadGraph {
 public:
  RoadGraph() = default;

  std::size_t link_count() const { return ids_.size(); }
  const std::vector<std::string>& link_ids() const { return ids_; }
  const std::string& link_id(std::size_t i) const { return ids_.at(i); }
  /// Throws ReferenceError for an unknown id.
  std::size_t index_of(const std::string& id) const;
  std::optional<std::size_t> find(const std::string& id) const;

  bool adjacent(std::size_t from, std::size_t to) const { return adj_[from * ids_.size() + to] != 0; }
  /// Links that `from` feeds, ascending.
  const std::vector<std::size_t>& downstream(std::size_t from) const { return out_[from]; }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  friend RoadGraph build_graph(const std::vector<std::string>& links,
                               const std::vector<std::pair<std::string, std::string>>& edges);

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Throws ValidationError on duplicate ids or self-loops, ReferenceError on
/// an edge endpoint that is not a declared link.
RoadGraph build_graph(const std::vector<std::string>& links,
                      const std::vector<std::pair<std::string, std::string>>& edges);

/// Directed ring L0 -> L1 -> ... -> L{n-1} -> L0.
RoadGraph ring_graph(std::size_t n);

/// Fewest links on a directed walk from i to j; 0 when i == j, nullopt when
/// j is unreachable from i.
std::optional<std::size_t> hop_distance(const RoadGraph& g, std::size_t i, std::size_t j);

/// Row-major |L|x|L| distances from one BFS per source.
std::vector<std::optional<std::size_t>> all_hop_distances(const RoadGraph& g);

enum class HopMode { Cumulative, Exact };

std::string to_string(HopMode mode);
HopMode parse_hop_mode(const std::string& text);

/// Binary K-hop neighbourhood mask with unit diagonal. Row i lists the links
/// whose speeds may enter link i's graph convolution.
class HopMask {
 public:
  HopMask() = default;
  HopMask(std::size_t order, HopMode mode, std::size_t link_count, std::vector<std::uint8_t> bits);

  std::size_t order() const { return order_; }
  HopMode mode() const { return mode_; }
  std::size_t link_count() const { return n_; }
  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  /// Columns set in row i, ascending (always contains i).
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return rows_[i]; }

  friend bool operator==(const HopMask& a, const HopMask& b) {
    return a.order_ == b.order_ && a.mode_ == b.mode_ && a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  std::size_t order_ = 0;
  HopMode mode_ = HopMode::Cumulative;
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
  std::vector<std::vector<std::size_t>> rows_;
};

/// Exact: Ci(A^K + I). Cumulative: Ci((A + I)^K), i.e. d(i, j) <= K or i == j.
HopMask hop_mask(const RoadGraph& g, std::size_t order, HopMode mode = HopMode::Cumulative);

/// Node file header `link_id`; edge file header `from_link,to_link`.
RoadGraph load_graph_csv(const std::filesystem::path& links, const std::filesystem::path& edges);
void write_graph_csv(const RoadGraph& g, const std::filesystem::path& links,
                     const std::filesystem::path& edges);

}  // namespace agc::graph
