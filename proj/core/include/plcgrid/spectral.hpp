// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "plcgrid/simple_graph.hpp"

namespace plcgrid {

struct SpectralOptions {
  /// Graphs up to this many vertices use a dense symmetric eigensolve.
  std::size_t dense_limit = 1000;
  /// Absolute accuracy target for eigenvalues.
  double tolerance = 1e-8;
};

/// Ascending eigenvalues of a dense symmetric matrix.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m);

Eigen::MatrixXd dense_laplacian(const SimpleGraph& g);
Eigen::MatrixXd dense_adjacency(const SimpleGraph& g);

/// lambda_2 of the Laplacian. 0 for disconnected graphs; dense solve up to
/// options.dense_limit vertices, Lanczos on the pseudo-inverse above.
double second_laplacian_eigenvalue(const SimpleGraph& g,
                                   const SpectralOptions& options = {});

/// Iterative route, exposed separately for cross-checking. Requires a
/// connected graph with at least 2 vertices.
///
/// Runs Lanczos with full reorthogonalisation on L^+ restricted to the
/// complement of the all-ones vector; L^+ b is applied through a sparse
/// LDL^T factorisation of L with vertex 0 grounded. The dominant Ritz value
/// of L^+ is 1/lambda_2, which is well separated even when lambda_2 itself
/// is tiny. The converged Ritz vector is polished with a Rayleigh quotient
/// on L.
double second_laplacian_eigenvalue_lanczos(const SimpleGraph& g,
                                           double tolerance = 1e-8);

}  // namespace plcgrid
