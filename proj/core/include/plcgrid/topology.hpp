// SPDX-License-Identifier: Apache-2.0
//
// Graph-theoretic metrics of a grid: size, average degree, average hop
// distance, degree assortativity, algebraic connectivity, clustering, and
// the empirical degree / adjacency-spectrum / branch-length distributions.
//
// All metrics are evaluated on the simplified graph: accepted branches only
// (open branches skipped by default), parallel branches collapsed.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "plcgrid/grid.hpp"
#include "plcgrid/simple_graph.hpp"
#include "plcgrid/spectral.hpp"

namespace plcgrid {

using DegreePmf = std::map<std::size_t, double>;

struct ClusteringCoefficients {
  double average_local = 0.0;  // mean Watts-Strogatz coefficient, deg<2 -> 0
  double transitivity = 0.0;   // 3 * triangles / connected triples
};

struct SpectralBin {
  double lower = 0.0;
  double upper = 0.0;
  double density = 0.0;
  double center() const noexcept { return 0.5 * (lower + upper); }
};

struct LengthBin {
  double lower_m = 0.0;
  double upper_m = 0.0;
  double probability = 0.0;
  std::size_t count = 0;
};

struct TopologyReport {
  std::size_t n_nodes = 0;
  std::size_t n_branches = 0;
  double avg_degree = 0.0;
  double avg_path_length_hops = 0.0;
  std::optional<double> pearson_degree_corr;  // nullopt: zero degree variance
  double algebraic_connectivity = 0.0;
  ClusteringCoefficients clustering;
  DegreePmf degree_pmf;
  std::vector<LengthBin> branch_length_pmf;
  std::vector<SpectralBin> spectral_density;

  double clustering_coeff() const noexcept { return clustering.average_local; }
};

struct MetricOptions {
  BranchFilter filter;
  SpectralOptions spectral;
  std::size_t spectral_bins = 50;
  double length_bin_width_m = 100.0;
  /// Worker threads for all-pairs BFS; 0 picks hardware concurrency.
  /// The result does not depend on this value.
  unsigned threads = 0;
};

// Each metric has a SimpleGraph form and a GridGraph convenience form.

/// Mean hop distance over unordered pairs of distinct vertices. Throws
/// DisconnectedGraphError.
double average_shortest_path(const SimpleGraph& g, unsigned threads = 0);
double average_shortest_path(const GridGraph& g, BranchFilter filter = {});

/// Pearson correlation of endpoint degrees over both orientations of every
/// edge. Throws ModelError on an edgeless graph.
std::optional<double> pearson_degree_correlation(const SimpleGraph& g);
std::optional<double> pearson_degree_correlation(const GridGraph& g,
                                                 BranchFilter filter = {});

double algebraic_connectivity(const SimpleGraph& g, const SpectralOptions& options = {});
double algebraic_connectivity(const GridGraph& g, BranchFilter filter = {},
                              const SpectralOptions& options = {});

ClusteringCoefficients clustering_coefficients(const SimpleGraph& g);
/// Average local clustering coefficient.
double clustering_coefficient(const GridGraph& g, BranchFilter filter = {});

DegreePmf degree_pmf(const SimpleGraph& g);
DegreePmf degree_pmf(const GridGraph& g, BranchFilter filter = {});

/// All adjacency eigenvalues, ascending.
Eigen::VectorXd adjacency_spectrum(const SimpleGraph& g);

/// Scale applied to adjacency eigenvalues: 1/sqrt(N p (1-p)) with
/// p = 2m / (N (N-1)); 1 when p is 0 or 1.
double spectral_normalization(const SimpleGraph& g);

/// Histogram of normalized adjacency eigenvalues over their range,
/// normalized so that sum(density * width) == 1.
std::vector<SpectralBin> spectral_density(const SimpleGraph& g, std::size_t n_bins);
std::vector<SpectralBin> spectral_density(const GridGraph& g, std::size_t n_bins,
                                          BranchFilter filter = {});

/// Histogram of accepted branch lengths in bins [k w, (k+1) w).
/// Throws ModelError when no branch is accepted.
std::vector<LengthBin> branch_length_pmf(const GridGraph& g, double bin_width_m,
                                         BranchFilter filter = {});
std::vector<LengthBin> branch_length_pmf(std::span<const double> lengths_m,
                                         double bin_width_m);

/// Slope of log-probability against bin centre, fitted by count-weighted
/// least squares over the non-empty bins from the mode onwards. For an
/// exponential length law this estimates -1/mean.
double exponential_tail_slope(std::span<const LengthBin> pmf);

/// Throws DisconnectedGraphError for disconnected graphs.
TopologyReport full_report(const GridGraph& g, const MetricOptions& options = {});
TopologyReport full_report(const SimpleGraph& g, std::span<const double> branch_lengths_m,
                           const MetricOptions& options = {});

// Serialization: flat key=value report plus one CSV per distribution.
void write_report(const TopologyReport& r, std::ostream& out);
void write_degree_pmf(const TopologyReport& r, std::ostream& out);
void write_spectral_density(const TopologyReport& r, std::ostream& out);
void write_branch_length_pmf(const TopologyReport& r, std::ostream& out);

}  // namespace plcgrid
