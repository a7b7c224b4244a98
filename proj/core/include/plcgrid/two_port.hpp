// SPDX-License-Identifier: Apache-2.0
//
// Transmission-line two-port (ABCD) algebra on a common frequency grid:
// line sections, cascades, bridged taps / grounding companion networks
// inserted as shunt elements, and the end-to-end voltage transfer.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "plcgrid/multipath.hpp"

namespace plcgrid {

using Abcd = Eigen::Matrix2cd;
/// Per-metre propagation constant gamma(f) = alpha(f) + j beta(f).
using PropagationConstant = std::function<Complex(double)>;

PropagationConstant lossless_line(double v_p);
/// gamma(f) = alpha(f) + j 2 pi f / v_p.
PropagationConstant lossy_line(double v_p, Attenuation attenuation);

class TwoPortNetwork {
 public:
  TwoPortNetwork(std::vector<double> freqs_hz, std::vector<Abcd> matrices);

  static TwoPortNetwork identity(std::vector<double> freqs_hz);
  static TwoPortNetwork shunt(std::vector<double> freqs_hz, const Eigen::VectorXcd& admittance);
  static TwoPortNetwork series(std::vector<double> freqs_hz, const Eigen::VectorXcd& impedance);

  const std::vector<double>& freqs() const noexcept { return freqs_; }
  const std::vector<Abcd>& matrices() const noexcept { return matrices_; }
  const Abcd& at(std::size_t k) const { return matrices_.at(k); }
  std::size_t size() const noexcept { return freqs_.size(); }

  bool same_grid(const TwoPortNetwork& other) const noexcept { return freqs_ == other.freqs_; }

  /// Largest |AD - BC - 1| over the grid.
  double reciprocity_error() const;

 private:
  std::vector<double> freqs_;
  std::vector<Abcd> matrices_;
};

/// ABCD = [[cosh gl, Z0 sinh gl], [sinh gl / Z0, cosh gl]].
/// Throws ModelError for negative length or Z0 == 0.
TwoPortNetwork line_section(double length_m, Complex z0, const PropagationConstant& gamma,
                            std::span<const double> freqs_hz);

/// Ordered product sections[0] * sections[1] * ... Throws ModelError on an
/// empty list or mismatched frequency grids.
TwoPortNetwork cascade(std::span<const TwoPortNetwork> sections);

/// A network hanging off the link, terminated by `termination`
/// (std::nullopt = open circuit).
struct Companion {
  std::vector<TwoPortNetwork> sections;
  std::optional<Complex> termination;
};

/// Admittance seen looking into the companion. Throws ModelError where its
/// input impedance vanishes (a short at the attachment point).
Eigen::VectorXcd input_admittance(const Companion& companion);

/// Inserts the companion's input admittance as a shunt two-port
/// [[1, 0], [Y_in, 1]] before link[panel_index]
/// (panel_index == link.size() appends).
std::vector<TwoPortNetwork> attach_companion(std::vector<TwoPortNetwork> link,
                                             std::size_t panel_index,
                                             const Companion& companion);

/// V_load / V_source = Z_L / (A Z_L + B + C Z_S Z_L + D Z_S) of the cascaded
/// link. Throws ModelError for Z_L == 0 or a vanishing denominator.
Eigen::VectorXcd endtoend_gain(std::span<const TwoPortNetwork> link, Complex source_impedance,
                               Complex load_impedance);

}  // namespace plcgrid
