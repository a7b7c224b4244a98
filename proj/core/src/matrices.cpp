// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/matrices.hpp"

#include <string>

#include "plcgrid/errors.hpp"
#include "plcgrid/simple_graph.hpp"

namespace plcgrid {

IncidenceMatrix incidence_matrix(const GridGraph& g, BranchFilter filter) {
  IncidenceMatrix out;
  std::vector<Eigen::Triplet<int>> triplets;
  const auto& branches = g.branches();
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const auto& br = branches[i];
    if (!filter.accepts(br)) continue;
    const auto row = static_cast<int>(out.branch_index.size());
    const auto lo = static_cast<int>(*g.index_of(std::min(br.from, br.to)));
    const auto hi = static_cast<int>(*g.index_of(std::max(br.from, br.to)));
    triplets.emplace_back(row, lo, +1);
    triplets.emplace_back(row, hi, -1);
    out.branch_index.push_back(i);
  }
  out.entries.resize(static_cast<Eigen::Index>(out.branch_index.size()),
                     static_cast<Eigen::Index>(g.bus_count()));
  out.entries.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

Eigen::VectorXcd branch_admittances(const GridGraph& g,
                                    const AdmittanceOptions& options) {
  std::vector<Complex> y;
  for (const auto& br : g.branches()) {
    if (!options.filter.accepts(br)) continue;
    Complex z = br.series_impedance();
    if (z == Complex{}) {
      if (br.kind == BranchKind::line) {
        throw ModelError("zero-impedance line " + std::to_string(br.from) + "-" +
                         std::to_string(br.to) +
                         "; give it a length and impedance or model it as a switch");
      }
      z = options.surrogate_impedance;
      if (z == Complex{}) throw ModelError("surrogate impedance must be non-zero");
    }
    y.push_back(options.base.impedance_ohm() / z);
  }
  return Eigen::Map<Eigen::VectorXcd>(y.data(), static_cast<Eigen::Index>(y.size()));
}

AdmittanceMatrix admittance_matrix(const GridGraph& g,
                                   const AdmittanceOptions& options) {
  const auto a = incidence_matrix(g, options.filter);
  const Eigen::VectorXcd y = branch_admittances(g, options);
  const Eigen::SparseMatrix<Complex> ac = a.entries.cast<Complex>();
  AdmittanceMatrix out;
  out.entries = Eigen::SparseMatrix<Complex>(ac.transpose() * y.asDiagonal() * ac);
  out.entries.makeCompressed();
  return out;
}

Eigen::SparseMatrix<double> laplacian(const GridGraph& g, BranchFilter filter) {
  const auto sg = SimpleGraph::from_grid(g, filter);
  const auto n = static_cast<Eigen::Index>(sg.node_count());
  std::vector<Eigen::Triplet<double>> t;
  for (std::size_t v = 0; v < sg.node_count(); ++v) {
    const auto i = static_cast<Eigen::Index>(v);
    t.emplace_back(i, i, static_cast<double>(sg.degree(v)));
  }
  for (auto [a, b] : sg.edges()) {
    t.emplace_back(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b), -1.0);
    t.emplace_back(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a), -1.0);
  }
  Eigen::SparseMatrix<double> lap(n, n);
  lap.setFromTriplets(t.begin(), t.end());
  return lap;
}

}  // namespace plcgrid
