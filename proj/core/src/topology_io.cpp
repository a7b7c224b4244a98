// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/text.hpp"
#include "plcgrid/topology.hpp"

namespace plcgrid {

using text::format_double;

void write_report(const TopologyReport& r, std::ostream& out) {
  out << "n_nodes=" << r.n_nodes << '\n'
      << "n_branches=" << r.n_branches << '\n'
      << "avg_degree=" << format_double(r.avg_degree) << '\n'
      << "avg_path_length_hops=" << format_double(r.avg_path_length_hops) << '\n'
      << "pearson_degree_corr="
      << (r.pearson_degree_corr ? format_double(*r.pearson_degree_corr) : "undefined") << '\n'
      << "algebraic_connectivity=" << format_double(r.algebraic_connectivity) << '\n'
      << "clustering_coeff=" << format_double(r.clustering.average_local) << '\n'
      << "clustering_transitivity=" << format_double(r.clustering.transitivity) << '\n';
}

void write_degree_pmf(const TopologyReport& r, std::ostream& out) {
  out << "degree,probability\n";
  for (const auto& [d, p] : r.degree_pmf) out << d << ',' << format_double(p) << '\n';
}

void write_spectral_density(const TopologyReport& r, std::ostream& out) {
  out << "normalized_eigenvalue,density\n";
  for (const auto& b : r.spectral_density) {
    out << format_double(b.center()) << ',' << format_double(b.density) << '\n';
  }
}

void write_branch_length_pmf(const TopologyReport& r, std::ostream& out) {
  out << "length_lower_m,length_upper_m,probability\n";
  for (const auto& b : r.branch_length_pmf) {
    out << format_double(b.lower_m) << ',' << format_double(b.upper_m) << ','
        << format_double(b.probability) << '\n';
  }
}

}  // namespace plcgrid
