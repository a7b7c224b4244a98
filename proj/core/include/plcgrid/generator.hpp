// SPDX-License-Identifier: Apache-2.0
//
// Synthetic distribution topologies: radial trees with a prescribed degree
// pmf, rings with radial hangers, and trees with extra chords.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "plcgrid/grid.hpp"
#include "plcgrid/simple_graph.hpp"
#include "plcgrid/statistics.hpp"

namespace plcgrid {

enum class TopologyKind { radial, ring, interconnected };

std::string_view to_string(TopologyKind kind);
std::optional<TopologyKind> parse_topology_kind(std::string_view s);

using DegreeDistribution = std::map<std::size_t, double>;

/// Degree pmf observed on a medium-voltage distribution grid
/// (16% leaves, 60% degree 2, 22% degree 3, 2% degree 4).
DegreeDistribution distribution_grid_degree_pmf();

struct GeneratorSpec {
  std::size_t n_nodes = 0;
  TopologyKind kind = TopologyKind::radial;
  DegreeDistribution degree_pmf = distribution_grid_degree_pmf();
  double branch_length_mean_m = 300.0;
  /// Extra edges as a fraction of N (ring and interconnected only).
  double chord_fraction = 0.0;
  /// Cycle length for the ring kind; N when unset.
  std::optional<std::size_t> ring_size;
  std::uint64_t seed = 1;
  double voltage_kv = 12.47;
  double r_ohm_per_km = 0.3;
  double x_ohm_per_km = 0.4;
};

/// Throws ModelError on an invalid spec (pmf not summing to 1, degree 0
/// entries, chords on a radial spec, ...).
void validate(const GeneratorSpec& spec);

/// The pmf closest in total variation whose mean is the tree mean
/// 2(N-1)/N. Mass moves from the highest degrees to degree 1 (or the
/// reverse). Throws ModelError when no such pmf exists on the support.
DegreeDistribution project_tree_pmf(const DegreeDistribution& pmf, std::size_t n_nodes);

/// Shuffled degree sequence with sum 2(N-1): each degree of the projected
/// pmf appears floor or ceil of N p times (systematic rounding with a random
/// offset), then single entries are nudged until the sum is exact.
std::vector<std::size_t> sample_tree_degrees(const DegreeDistribution& pmf, std::size_t n_nodes,
                                             Rng& rng);

/// Uniformly random labelled tree with the given degrees (sum 2(N-1),
/// every degree >= 1), decoded from a shuffled Pruefer sequence.
SimpleGraph tree_from_degrees(const std::vector<std::size_t>& degrees, Rng& rng);

/// Connected graph of the requested kind with buses 1..N (bus 1 is the
/// generator) and i.i.d. exponential branch lengths.
GridGraph generate_topology(const GeneratorSpec& spec);

}  // namespace plcgrid
