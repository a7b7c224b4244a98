// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "plcgrid/grid.hpp"
#include "plcgrid/simple_graph.hpp"

namespace plcgrid::testing {

inline std::filesystem::path data_dir() { return PLCGRID_DATA_DIR; }

inline SimpleGraph path_graph(std::size_t n) {
  std::vector<SimpleGraph::Edge> e;
  for (std::size_t v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return SimpleGraph(n, e);
}

inline SimpleGraph cycle_graph(std::size_t n) {
  std::vector<SimpleGraph::Edge> e;
  for (std::size_t v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return SimpleGraph(n, e);
}

/// Hub 0 with n - 1 leaves.
inline SimpleGraph star_graph(std::size_t n) {
  std::vector<SimpleGraph::Edge> e;
  for (std::size_t v = 1; v < n; ++v) e.emplace_back(0, v);
  return SimpleGraph(n, e);
}

inline SimpleGraph complete_graph(std::size_t n) {
  std::vector<SimpleGraph::Edge> e;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) e.emplace_back(a, b);
  }
  return SimpleGraph(n, e);
}

inline SimpleGraph erdos_renyi(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<SimpleGraph::Edge> e;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (coin(rng)) e.emplace_back(a, b);
    }
  }
  return SimpleGraph(n, e);
}

/// Random labelled tree: vertex v > 0 attaches to a uniform earlier vertex.
inline SimpleGraph random_tree(std::size_t n, std::mt19937_64& rng) {
  std::vector<SimpleGraph::Edge> e;
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> parent(0, v - 1);
    e.emplace_back(parent(rng), v);
  }
  return SimpleGraph(n, e);
}

/// Buses 1..N with the given kv; one line per edge of g.
inline GridGraph grid_from(const SimpleGraph& g, double length_m = 1000.0,
                           std::optional<double> kv = 0.4, double r = 0.2, double x = 0.4) {
  std::vector<Bus> buses;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    buses.push_back(Bus{static_cast<BusId>(v + 1), kv, BusRole::intermediate});
  }
  std::vector<Branch> branches;
  for (const auto& [a, b] : g.edges()) {
    branches.push_back(Branch{static_cast<BusId>(a + 1), static_cast<BusId>(b + 1), length_m, r,
                              x, BranchKind::line, BranchStatus::in_service});
  }
  return GridGraph(std::move(buses), std::move(branches));
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("plcgrid_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace plcgrid::testing
