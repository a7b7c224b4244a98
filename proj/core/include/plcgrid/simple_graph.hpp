// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "plcgrid/grid.hpp"

namespace plcgrid {

/// Undirected simple graph on vertices 0..N-1 (no self-loops, no parallel
/// edges). Adjacency lists are sorted, so traversal order is deterministic.
class SimpleGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  SimpleGraph() = default;
  /// Duplicate and reversed pairs collapse; self-loops are dropped.
  SimpleGraph(std::size_t n, std::span<const Edge> edges);

  /// Buses of g become vertices by index; accepted branches become edges.
  static SimpleGraph from_grid(const GridGraph& g, BranchFilter filter = {});

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }
  const std::vector<std::size_t>& neighbors(std::size_t v) const {
    return adjacency_[v];
  }
  bool has_edge(std::size_t a, std::size_t b) const;
  /// Edges with first < second, lexicographically sorted.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Component label per vertex (labels 0..k-1 in order of first vertex).
  std::vector<std::size_t> component_labels() const;
  std::size_t component_count() const;
  bool is_connected() const { return component_count() <= 1; }

  /// Hop distances from `source`; unreachable vertices get SIZE_MAX.
  std::vector<std::size_t> bfs_distances(std::size_t source) const;

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Edge> edges_;
};

}  // namespace plcgrid
