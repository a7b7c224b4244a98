// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/simple_graph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace plcgrid {

SimpleGraph::SimpleGraph(std::size_t n, std::span<const Edge> edges)
    : adjacency_(n) {
  edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw std::out_of_range("edge endpoint out of range");
    if (a == b) continue;
    edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

SimpleGraph SimpleGraph::from_grid(const GridGraph& g, BranchFilter filter) {
  std::vector<Edge> edges;
  edges.reserve(g.branches().size());
  for (const auto& br : g.branches()) {
    if (!filter.accepts(br)) continue;
    edges.emplace_back(*g.index_of(br.from), *g.index_of(br.to));
  }
  return SimpleGraph(g.bus_count(), edges);
}

bool SimpleGraph::has_edge(std::size_t a, std::size_t b) const {
  const auto& adj = adjacency_[a];
  return std::binary_search(adj.begin(), adj.end(), b);
}

std::vector<std::size_t> SimpleGraph::component_labels() const {
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(node_count(), unset);
  std::size_t next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < node_count(); ++s) {
    if (label[s] != unset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (const auto w : adjacency_[v]) {
        if (label[w] == unset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t SimpleGraph::component_count() const {
  const auto labels = component_labels();
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

std::vector<std::size_t> SimpleGraph::bfs_distances(std::size_t source) const {
  constexpr auto unreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(node_count(), unreached);
  std::vector<std::size_t> frontier{source};
  dist[source] = 0;
  std::size_t head = 0;
  while (head < frontier.size()) {
    const auto v = frontier[head++];
    for (const auto w : adjacency_[v]) {
      if (dist[w] == unreached) {
        dist[w] = dist[v] + 1;
        frontier.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace plcgrid
