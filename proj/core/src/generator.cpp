// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/generator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "plcgrid/errors.hpp"

namespace plcgrid {

std::string_view to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::radial: return "radial";
    case TopologyKind::ring: return "ring";
    case TopologyKind::interconnected: return "interconnected";
  }
  return "radial";
}

std::optional<TopologyKind> parse_topology_kind(std::string_view s) {
  if (s == "radial") return TopologyKind::radial;
  if (s == "ring") return TopologyKind::ring;
  if (s == "interconnected") return TopologyKind::interconnected;
  return std::nullopt;
}

DegreeDistribution distribution_grid_degree_pmf() {
  return {{1, 0.16}, {2, 0.60}, {3, 0.22}, {4, 0.02}};
}

namespace {
constexpr double kPmfTolerance = 1e-9;

double pmf_mean(const DegreeDistribution& pmf) {
  double m = 0.0;
  for (const auto& [d, p] : pmf) m += static_cast<double>(d) * p;
  return m;
}
}  // namespace

void validate(const GeneratorSpec& spec) {
  if (spec.n_nodes < 2) throw ModelError("n_nodes must be at least 2");
  if (spec.degree_pmf.empty()) throw ModelError("degree pmf is empty");
  double total = 0.0;
  for (const auto& [d, p] : spec.degree_pmf) {
    if (d == 0) throw ModelError("degree pmf has a degree-0 entry (graph must be connected)");
    if (!(p >= 0.0) || !std::isfinite(p)) throw ModelError("degree pmf has a negative entry");
    total += p;
  }
  if (std::abs(total - 1.0) > kPmfTolerance) {
    throw ModelError("degree pmf sums to " + std::to_string(total) + ", not 1");
  }
  if (!(spec.branch_length_mean_m > 0.0) || !std::isfinite(spec.branch_length_mean_m)) {
    throw ModelError("branch_length_mean_m must be positive");
  }
  if (!(spec.chord_fraction >= 0.0) || !std::isfinite(spec.chord_fraction)) {
    throw ModelError("chord_fraction must be non-negative");
  }
  if (spec.kind == TopologyKind::radial && spec.chord_fraction > 0.0) {
    throw ModelError("a radial topology cannot have chords");
  }
  if (spec.kind == TopologyKind::ring) {
    const auto ring = spec.ring_size.value_or(spec.n_nodes);
    if (ring < 3 || ring > spec.n_nodes) throw ModelError("ring_size must lie in [3, n_nodes]");
  } else if (spec.ring_size) {
    throw ModelError("ring_size only applies to the ring kind");
  }
  if (!(spec.voltage_kv > 0.0)) throw ModelError("voltage_kv must be positive");
  if (!(spec.r_ohm_per_km >= 0.0) || !std::isfinite(spec.x_ohm_per_km)) {
    throw ModelError("line impedance must have r >= 0 and finite x");
  }
}

DegreeDistribution project_tree_pmf(const DegreeDistribution& pmf, std::size_t n_nodes) {
  if (n_nodes < 2) throw ModelError("a tree needs at least 2 nodes");
  const double target = 2.0 * static_cast<double>(n_nodes - 1) / static_cast<double>(n_nodes);
  DegreeDistribution out;
  for (const auto& [d, p] : pmf) {
    if (p > 0.0) out[d] = p;
  }
  double excess = pmf_mean(out) - target;
  if (excess > 0.0) {
    // Each unit of mass moved from degree d to 1 lowers the mean by d - 1.
    for (auto it = out.rbegin(); it != out.rend() && excess > 0.0; ++it) {
      if (it->first == 1) break;
      const double moved = std::min(it->second, excess / static_cast<double>(it->first - 1));
      it->second -= moved;
      out[1] += moved;
      excess -= moved * static_cast<double>(it->first - 1);
    }
  } else if (excess < 0.0) {
    // Degree 1 mass moves up to the largest degree of the support.
    const std::size_t top = out.rbegin()->first;
    for (auto it = out.begin(); it != out.end() && excess < 0.0 && it->first < top; ++it) {
      const double moved = std::min(it->second, -excess / static_cast<double>(top - it->first));
      it->second -= moved;
      out[top] += moved;
      excess += moved * static_cast<double>(top - it->first);
    }
  }
  if (std::abs(excess) > 1e-12) {
    throw ModelError("degree pmf cannot reach the tree mean degree " + std::to_string(target));
  }
  std::erase_if(out, [](const auto& kv) { return kv.second <= 0.0; });
  return out;
}

std::vector<std::size_t> sample_tree_degrees(const DegreeDistribution& pmf, std::size_t n_nodes,
                                             Rng& rng) {
  const auto projected = project_tree_pmf(pmf, n_nodes);
  std::vector<std::size_t> support;
  std::vector<double> weights;
  for (const auto& [d, p] : projected) {
    support.push_back(d);
    weights.push_back(p);
  }
  const std::size_t target = 2 * (n_nodes - 1);

  // Systematic allocation: class d gets floor or ceil of N p_d nodes, with
  // a single uniform offset deciding which classes round up.
  std::uniform_real_distribution<double> offset(0.0, 1.0);
  const double u = offset(rng);
  std::vector<std::size_t> deg;
  deg.reserve(n_nodes);
  double cumulative = 0.0;
  for (std::size_t c = 0; c < support.size(); ++c) {
    const double lo = cumulative;
    cumulative += weights[c] * static_cast<double>(n_nodes);
    const auto first = static_cast<std::size_t>(std::max(0.0, std::ceil(lo - u)));
    const auto last = static_cast<std::size_t>(std::max(0.0, std::ceil(cumulative - u)));
    for (std::size_t k = first; k < last && deg.size() < n_nodes; ++k) deg.push_back(support[c]);
  }
  while (deg.size() < n_nodes) deg.push_back(support.back());
  std::shuffle(deg.begin(), deg.end(), rng);

  // The rounded counts can miss 2(N-1) by a few; nudge random entries to
  // neighbouring degrees of the support (degree 1 always allowed).
  std::set<std::size_t> allowed(support.begin(), support.end());
  allowed.insert(1);
  std::size_t sum = std::accumulate(deg.begin(), deg.end(), std::size_t{0});
  std::vector<std::size_t> candidates;
  while (sum != target) {
    const bool down = sum > target;
    candidates.clear();
    for (std::size_t i = 0; i < n_nodes; ++i) {
      if (down ? (deg[i] > 1 && allowed.count(deg[i] - 1)) : allowed.count(deg[i] + 1) != 0) {
        candidates.push_back(i);
      }
    }
    if (candidates.empty()) throw ModelError("cannot realize a tree degree sequence");
    std::uniform_int_distribution<std::size_t> any(0, candidates.size() - 1);
    const auto i = candidates[any(rng)];
    if (down) {
      --deg[i];
      --sum;
    } else {
      ++deg[i];
      ++sum;
    }
  }
  return deg;
}

SimpleGraph tree_from_degrees(const std::vector<std::size_t>& degrees, Rng& rng) {
  const std::size_t n = degrees.size();
  if (n < 2) throw ModelError("a tree needs at least 2 nodes");
  std::size_t sum = 0;
  for (auto d : degrees) {
    if (d == 0) throw ModelError("tree degrees must be at least 1");
    sum += d;
  }
  if (sum != 2 * (n - 1)) throw ModelError("tree degrees must sum to 2(N-1)");

  std::vector<std::size_t> prufer;
  prufer.reserve(n - 2);
  for (std::size_t v = 0; v < n; ++v) prufer.insert(prufer.end(), degrees[v] - 1, v);
  std::shuffle(prufer.begin(), prufer.end(), rng);

  std::vector<std::size_t> remaining = degrees;
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> leaves;
  for (std::size_t v = 0; v < n; ++v) {
    if (remaining[v] == 1) leaves.push(v);
  }
  std::vector<SimpleGraph::Edge> edges;
  edges.reserve(n - 1);
  for (const auto v : prufer) {
    const auto leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(leaf, v);
    if (--remaining[v] == 1) leaves.push(v);
  }
  const auto a = leaves.top();
  leaves.pop();
  edges.emplace_back(a, leaves.top());
  return SimpleGraph(n, edges);
}

namespace {

std::vector<SimpleGraph::Edge> add_chords(const SimpleGraph& base, std::size_t count, Rng& rng) {
  const std::size_t n = base.node_count();
  const std::size_t max_edges = n * (n - 1) / 2;
  if (base.edge_count() + count > max_edges) {
    throw ModelError("chord_fraction asks for more edges than a simple graph can hold");
  }
  std::set<SimpleGraph::Edge> present(base.edges().begin(), base.edges().end());
  std::vector<SimpleGraph::Edge> edges(base.edges().begin(), base.edges().end());
  std::uniform_int_distribution<std::size_t> node(0, n - 1);
  while (count > 0) {
    auto a = node(rng);
    auto b = node(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!present.insert({a, b}).second) continue;
    edges.emplace_back(a, b);
    --count;
  }
  return edges;
}

SimpleGraph ring_with_hangers(std::size_t n, std::size_t ring, Rng& rng) {
  std::vector<SimpleGraph::Edge> edges;
  for (std::size_t v = 0; v < ring; ++v) edges.emplace_back(v, (v + 1) % ring);
  for (std::size_t v = ring; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> parent(0, v - 1);
    edges.emplace_back(parent(rng), v);
  }
  return SimpleGraph(n, edges);
}

}  // namespace

GridGraph generate_topology(const GeneratorSpec& spec) {
  validate(spec);
  const std::size_t n = spec.n_nodes;
  auto topo_rng = derive_stream(spec.seed, 0);
  auto length_rng = derive_stream(spec.seed, 1);

  SimpleGraph graph;
  if (spec.kind == TopologyKind::ring) {
    graph = ring_with_hangers(n, spec.ring_size.value_or(n), topo_rng);
  } else {
    graph = tree_from_degrees(sample_tree_degrees(spec.degree_pmf, n, topo_rng), topo_rng);
  }
  const auto chords = static_cast<std::size_t>(
      std::llround(spec.chord_fraction * static_cast<double>(n)));
  if (chords > 0) {
    const auto edges = add_chords(graph, chords, topo_rng);
    graph = SimpleGraph(n, edges);
  }

  std::vector<Bus> buses(n);
  for (std::size_t v = 0; v < n; ++v) {
    buses[v] = Bus{static_cast<BusId>(v + 1), spec.voltage_kv,
                   v == 0 ? BusRole::generator : BusRole::intermediate};
  }
  std::exponential_distribution<double> length(1.0 / spec.branch_length_mean_m);
  std::vector<Branch> branches;
  branches.reserve(graph.edge_count());
  for (const auto& [a, b] : graph.edges()) {
    branches.push_back(Branch{static_cast<BusId>(a + 1), static_cast<BusId>(b + 1),
                              length(length_rng), spec.r_ohm_per_km, spec.x_ohm_per_km,
                              BranchKind::line, BranchStatus::in_service});
  }
  return GridGraph(std::move(buses), std::move(branches));
}

}  // namespace plcgrid
