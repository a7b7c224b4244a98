// SPDX-License-Identifier: Apache-2.0
//
// Matrices derived from a GridGraph: signed incidence A, series admittance
// Y = A^T diag(y) A, and the combinatorial Laplacian of the simplified graph.
// Bus index k is the rank of the bus id (GridGraph keeps buses sorted).
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "plcgrid/grid.hpp"

namespace plcgrid {

/// Per-unit base. Admittances are multiplied by the base impedance
/// kv^2 / MVA so that Y, V, I and S are commensurate.
struct PerUnitBase {
  double kv = 1.0;
  double mva = 1.0;
  double impedance_ohm() const noexcept { return kv * kv / mva; }
};

struct AdmittanceOptions {
  BranchFilter filter;
  /// Used for switches and transformers that carry no impedance data.
  Complex surrogate_impedance{1e-4, 1e-4};
  PerUnitBase base;
};

/// Signed branch-by-bus incidence. Row l belongs to `branch_index[l]`, the
/// position of the branch in g.branches(); +1 sits on the lower bus id.
struct IncidenceMatrix {
  Eigen::SparseMatrix<int, Eigen::RowMajor> entries;
  std::vector<std::size_t> branch_index;
};

struct AdmittanceMatrix {
  Eigen::SparseMatrix<Complex> entries;

  Eigen::Index size() const noexcept { return entries.rows(); }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(entries); }
};

IncidenceMatrix incidence_matrix(const GridGraph& g, BranchFilter filter = {});

/// Series admittance y = 1/z of every accepted branch, in incidence row
/// order, scaled to the per-unit base. Throws ModelError for a line with
/// zero impedance.
Eigen::VectorXcd branch_admittances(const GridGraph& g,
                                    const AdmittanceOptions& options = {});

AdmittanceMatrix admittance_matrix(const GridGraph& g,
                                   const AdmittanceOptions& options = {});

/// Laplacian of the simplified graph (parallel branches collapsed).
Eigen::SparseMatrix<double> laplacian(const GridGraph& g, BranchFilter filter = {});

}  // namespace plcgrid
