// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <thread>

#include "plcgrid/errors.hpp"

namespace plcgrid {

double average_shortest_path(const SimpleGraph& g, unsigned threads) {
  const auto n = g.node_count();
  if (n < 2) throw ModelError("average path length needs at least 2 vertices");
  const auto components = g.component_count();
  if (components > 1) throw DisconnectedGraphError(components);

  unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));

  // Integer partial sums per worker: the total is exact, so the result is
  // the same for any worker count.
  std::vector<std::uint64_t> partial(workers, 0);
  auto run = [&](unsigned w) {
    for (std::size_t s = w; s < n; s += workers) {
      const auto dist = g.bfs_distances(s);
      for (std::size_t t = s + 1; t < n; ++t) partial[w] += dist[t];
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  std::uint64_t total = 0;
  for (const auto p : partial) total += p;
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return static_cast<double>(total) / pairs;
}

double average_shortest_path(const GridGraph& g, BranchFilter filter) {
  return average_shortest_path(SimpleGraph::from_grid(g, filter));
}

std::optional<double> pearson_degree_correlation(const SimpleGraph& g) {
  if (g.edge_count() == 0) throw ModelError("degree correlation of an edgeless graph");
  // Over both orientations the two marginals coincide, so the coefficient is
  // (E[xy] - E[x]^2) / (E[x^2] - E[x]^2). Sums are exact integers.
  std::uint64_t sum_x = 0;
  std::uint64_t sum_x2 = 0;
  std::uint64_t sum_xy = 0;
  for (auto [a, b] : g.edges()) {
    const std::uint64_t da = g.degree(a);
    const std::uint64_t db = g.degree(b);
    sum_x += da + db;
    sum_x2 += da * da + db * db;
    sum_xy += 2 * da * db;
  }
  const double count = 2.0 * static_cast<double>(g.edge_count());
  const double mean = static_cast<double>(sum_x) / count;
  const double var = static_cast<double>(sum_x2) / count - mean * mean;
  const double cov = static_cast<double>(sum_xy) / count - mean * mean;
  // Integer check for zero variance avoids round-off deciding "undefined".
  if (static_cast<double>(sum_x2) * count == static_cast<double>(sum_x) * static_cast<double>(sum_x)) {
    return std::nullopt;
  }
  return cov / var;
}

std::optional<double> pearson_degree_correlation(const GridGraph& g, BranchFilter filter) {
  return pearson_degree_correlation(SimpleGraph::from_grid(g, filter));
}

double algebraic_connectivity(const SimpleGraph& g, const SpectralOptions& options) {
  return second_laplacian_eigenvalue(g, options);
}

double algebraic_connectivity(const GridGraph& g, BranchFilter filter,
                              const SpectralOptions& options) {
  return algebraic_connectivity(SimpleGraph::from_grid(g, filter), options);
}

ClusteringCoefficients clustering_coefficients(const SimpleGraph& g) {
  ClusteringCoefficients out;
  const auto n = g.node_count();
  if (n == 0) return out;
  std::uint64_t closed = 0;   // sum over vertices of neighbour-pair edges
  std::uint64_t triples = 0;  // sum over vertices of d(d-1)/2
  double local_sum = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nb = g.neighbors(v);
    const std::uint64_t d = nb.size();
    if (d < 2) continue;
    std::uint64_t links = 0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (g.has_edge(nb[i], nb[j])) ++links;
      }
    }
    const std::uint64_t pairs = d * (d - 1) / 2;
    closed += links;
    triples += pairs;
    local_sum += static_cast<double>(links) / static_cast<double>(pairs);
  }
  out.average_local = local_sum / static_cast<double>(n);
  out.transitivity = triples == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(triples);
  return out;
}

double clustering_coefficient(const GridGraph& g, BranchFilter filter) {
  return clustering_coefficients(SimpleGraph::from_grid(g, filter)).average_local;
}

DegreePmf degree_pmf(const SimpleGraph& g) {
  DegreePmf pmf;
  const auto n = g.node_count();
  if (n == 0) return pmf;
  std::map<std::size_t, std::size_t> counts;
  for (std::size_t v = 0; v < n; ++v) ++counts[g.degree(v)];
  for (const auto& [d, c] : counts) pmf[d] = static_cast<double>(c) / static_cast<double>(n);
  return pmf;
}

DegreePmf degree_pmf(const GridGraph& g, BranchFilter filter) {
  return degree_pmf(SimpleGraph::from_grid(g, filter));
}

Eigen::VectorXd adjacency_spectrum(const SimpleGraph& g) {
  return symmetric_eigenvalues(dense_adjacency(g));
}

double spectral_normalization(const SimpleGraph& g) {
  const double n = static_cast<double>(g.node_count());
  if (n < 2) return 1.0;
  const double p = 2.0 * static_cast<double>(g.edge_count()) / (n * (n - 1.0));
  const double var = n * p * (1.0 - p);
  return var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
}

namespace {

std::vector<SpectralBin> histogram_density(const Eigen::VectorXd& values, std::size_t n_bins) {
  if (n_bins == 0) throw ModelError("spectral density needs at least one bin");
  std::vector<SpectralBin> bins(n_bins);
  if (values.size() == 0) return bins;
  double lo = values.minCoeff();
  double hi = values.maxCoeff();
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / static_cast<double>(n_bins);
  std::vector<std::size_t> counts(n_bins, 0);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    auto k = static_cast<std::size_t>(std::floor((values(i) - lo) / width));
    ++counts[std::min(k, n_bins - 1)];
  }
  const double total = static_cast<double>(values.size());
  for (std::size_t k = 0; k < n_bins; ++k) {
    bins[k].lower = lo + width * static_cast<double>(k);
    bins[k].upper = k + 1 == n_bins ? hi : lo + width * static_cast<double>(k + 1);
    bins[k].density = static_cast<double>(counts[k]) / (total * width);
  }
  return bins;
}

}  // namespace

std::vector<SpectralBin> spectral_density(const SimpleGraph& g, std::size_t n_bins) {
  if (g.node_count() < 2) throw ModelError("spectral density needs N >= 2");
  const Eigen::VectorXd scaled = adjacency_spectrum(g) * spectral_normalization(g);
  return histogram_density(scaled, n_bins);
}

std::vector<SpectralBin> spectral_density(const GridGraph& g, std::size_t n_bins,
                                          BranchFilter filter) {
  return spectral_density(SimpleGraph::from_grid(g, filter), n_bins);
}

std::vector<LengthBin> branch_length_pmf(std::span<const double> lengths_m, double bin_width_m) {
  if (lengths_m.empty()) throw ModelError("branch length distribution of a graph without branches");
  if (!(bin_width_m > 0.0)) throw ModelError("bin width must be positive");
  const double longest = *std::max_element(lengths_m.begin(), lengths_m.end());
  const auto n_bins = static_cast<std::size_t>(std::floor(longest / bin_width_m)) + 1;
  std::vector<LengthBin> bins(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) {
    bins[k].lower_m = bin_width_m * static_cast<double>(k);
    bins[k].upper_m = bin_width_m * static_cast<double>(k + 1);
  }
  for (const double len : lengths_m) {
    const auto k = std::min(static_cast<std::size_t>(std::floor(len / bin_width_m)), n_bins - 1);
    ++bins[k].count;
  }
  const double total = static_cast<double>(lengths_m.size());
  for (auto& b : bins) b.probability = static_cast<double>(b.count) / total;
  return bins;
}

std::vector<LengthBin> branch_length_pmf(const GridGraph& g, double bin_width_m,
                                         BranchFilter filter) {
  std::vector<double> lengths;
  for (const auto& br : g.branches()) {
    if (filter.accepts(br)) lengths.push_back(br.length_m);
  }
  return branch_length_pmf(lengths, bin_width_m);
}

double exponential_tail_slope(std::span<const LengthBin> pmf) {
  if (pmf.empty()) throw ModelError("empty length distribution");
  const auto mode = static_cast<std::size_t>(
      std::max_element(pmf.begin(), pmf.end(),
                       [](const LengthBin& a, const LengthBin& b) { return a.count < b.count; }) -
      pmf.begin());
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t used = 0;
  for (std::size_t k = mode; k < pmf.size(); ++k) {
    if (pmf[k].count == 0) continue;
    const double w = static_cast<double>(pmf[k].count);
    const double x = 0.5 * (pmf[k].lower_m + pmf[k].upper_m);
    const double y = std::log(pmf[k].probability);
    sw += w;
    sx += w * x;
    sy += w * y;
    sxx += w * x * x;
    sxy += w * x * y;
    ++used;
  }
  if (used < 2) throw ModelError("tail fit needs at least two non-empty bins");
  return (sw * sxy - sx * sy) / (sw * sxx - sx * sx);
}

TopologyReport full_report(const SimpleGraph& g, std::span<const double> branch_lengths_m,
                           const MetricOptions& options) {
  TopologyReport r;
  r.n_nodes = g.node_count();
  r.n_branches = g.edge_count();
  r.avg_degree = r.n_nodes == 0 ? 0.0
                                : 2.0 * static_cast<double>(r.n_branches) /
                                      static_cast<double>(r.n_nodes);
  r.avg_path_length_hops = average_shortest_path(g, options.threads);
  r.pearson_degree_corr = pearson_degree_correlation(g);
  r.algebraic_connectivity = algebraic_connectivity(g, options.spectral);
  r.clustering = clustering_coefficients(g);
  r.degree_pmf = degree_pmf(g);
  r.branch_length_pmf = branch_length_pmf(branch_lengths_m, options.length_bin_width_m);
  r.spectral_density = spectral_density(g, options.spectral_bins);
  return r;
}

TopologyReport full_report(const GridGraph& g, const MetricOptions& options) {
  std::vector<double> lengths;
  for (const auto& br : g.branches()) {
    if (options.filter.accepts(br)) lengths.push_back(br.length_m);
  }
  return full_report(SimpleGraph::from_grid(g, options.filter), lengths, options);
}

}  // namespace plcgrid
