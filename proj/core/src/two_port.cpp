// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/two_port.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "plcgrid/errors.hpp"
#include "plcgrid/text.hpp"

namespace plcgrid {

PropagationConstant lossless_line(double v_p) {
  if (!(v_p > 0.0)) throw ModelError("propagation velocity must be positive");
  return [v_p](double f) { return Complex(0.0, 2.0 * std::numbers::pi * f / v_p); };
}

PropagationConstant lossy_line(double v_p, Attenuation attenuation) {
  if (!(v_p > 0.0)) throw ModelError("propagation velocity must be positive");
  return [v_p, attenuation](double f) {
    return Complex(attenuation(f), 2.0 * std::numbers::pi * f / v_p);
  };
}

TwoPortNetwork::TwoPortNetwork(std::vector<double> freqs_hz, std::vector<Abcd> matrices)
    : freqs_(std::move(freqs_hz)), matrices_(std::move(matrices)) {
  if (freqs_.size() != matrices_.size()) {
    throw DimensionError("two-port needs one ABCD matrix per frequency");
  }
}

TwoPortNetwork TwoPortNetwork::identity(std::vector<double> freqs_hz) {
  std::vector<Abcd> m(freqs_hz.size(), Abcd::Identity());
  return TwoPortNetwork(std::move(freqs_hz), std::move(m));
}

TwoPortNetwork TwoPortNetwork::shunt(std::vector<double> freqs_hz,
                                     const Eigen::VectorXcd& admittance) {
  std::vector<Abcd> m(freqs_hz.size(), Abcd::Identity());
  if (static_cast<std::size_t>(admittance.size()) != m.size()) {
    throw DimensionError("shunt admittance length does not match frequency grid");
  }
  for (std::size_t k = 0; k < m.size(); ++k) m[k](1, 0) = admittance(static_cast<Eigen::Index>(k));
  return TwoPortNetwork(std::move(freqs_hz), std::move(m));
}

TwoPortNetwork TwoPortNetwork::series(std::vector<double> freqs_hz,
                                      const Eigen::VectorXcd& impedance) {
  std::vector<Abcd> m(freqs_hz.size(), Abcd::Identity());
  if (static_cast<std::size_t>(impedance.size()) != m.size()) {
    throw DimensionError("series impedance length does not match frequency grid");
  }
  for (std::size_t k = 0; k < m.size(); ++k) m[k](0, 1) = impedance(static_cast<Eigen::Index>(k));
  return TwoPortNetwork(std::move(freqs_hz), std::move(m));
}

double TwoPortNetwork::reciprocity_error() const {
  double worst = 0.0;
  for (const auto& m : matrices_) worst = std::max(worst, std::abs(m.determinant() - 1.0));
  return worst;
}

TwoPortNetwork line_section(double length_m, Complex z0, const PropagationConstant& gamma,
                            std::span<const double> freqs_hz) {
  if (!(length_m >= 0.0)) throw ModelError("line length must be non-negative");
  if (z0 == Complex{}) throw ModelError("characteristic impedance must be non-zero");
  std::vector<Abcd> m(freqs_hz.size());
  for (std::size_t k = 0; k < freqs_hz.size(); ++k) {
    const Complex gl = gamma(freqs_hz[k]) * length_m;
    const Complex ch = std::cosh(gl);
    const Complex sh = std::sinh(gl);
    m[k] << ch, z0 * sh, sh / z0, ch;
  }
  return TwoPortNetwork(std::vector<double>(freqs_hz.begin(), freqs_hz.end()), std::move(m));
}

TwoPortNetwork cascade(std::span<const TwoPortNetwork> sections) {
  if (sections.empty()) throw ModelError("cascade of an empty section list");
  std::vector<Abcd> m = sections.front().matrices();
  for (std::size_t s = 1; s < sections.size(); ++s) {
    if (!sections[s].same_grid(sections.front())) {
      throw ModelError("cascade sections use different frequency grids (section " +
                       std::to_string(s) + ")");
    }
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = m[k] * sections[s].at(k);
  }
  return TwoPortNetwork(sections.front().freqs(), std::move(m));
}

Eigen::VectorXcd input_admittance(const Companion& companion) {
  const auto net = cascade(companion.sections);
  Eigen::VectorXcd y(static_cast<Eigen::Index>(net.size()));
  for (std::size_t k = 0; k < net.size(); ++k) {
    const Abcd& m = net.at(k);
    // Y_in = (C Z_T + D) / (A Z_T + B); open termination gives C / A.
    Complex num;
    Complex den;
    if (companion.termination) {
      num = m(1, 0) * *companion.termination + m(1, 1);
      den = m(0, 0) * *companion.termination + m(0, 1);
    } else {
      num = m(1, 0);
      den = m(0, 0);
    }
    if (den == Complex{}) {
      throw ModelError("companion input impedance is zero at " +
                       text::format_double(net.freqs()[k]) + " Hz (short at panel)");
    }
    y(static_cast<Eigen::Index>(k)) = num / den;
  }
  return y;
}

std::vector<TwoPortNetwork> attach_companion(std::vector<TwoPortNetwork> link,
                                             std::size_t panel_index,
                                             const Companion& companion) {
  if (panel_index > link.size()) throw ModelError("panel index outside the section list");
  if (companion.sections.empty()) throw ModelError("companion has no sections");
  const auto y = input_admittance(companion);
  const auto& grid = companion.sections.front().freqs();
  if (!link.empty() && link.front().freqs() != grid) {
    throw ModelError("companion and link use different frequency grids");
  }
  link.insert(link.begin() + static_cast<std::ptrdiff_t>(panel_index),
              TwoPortNetwork::shunt(grid, y));
  return link;
}

Eigen::VectorXcd endtoend_gain(std::span<const TwoPortNetwork> link, Complex zs, Complex zl) {
  if (zl == Complex{}) throw ModelError("load impedance must be non-zero");
  const auto net = cascade(link);
  Eigen::VectorXcd h(static_cast<Eigen::Index>(net.size()));
  for (std::size_t k = 0; k < net.size(); ++k) {
    const Abcd& m = net.at(k);
    const Complex den = m(0, 0) * zl + m(0, 1) + m(1, 0) * zs * zl + m(1, 1) * zs;
    if (den == Complex{} || !std::isfinite(std::abs(den))) {
      throw ModelError("degenerate two-port denominator at " +
                       text::format_double(net.freqs()[k]) + " Hz");
    }
    h(static_cast<Eigen::Index>(k)) = zl / den;
  }
  return h;
}

}  // namespace plcgrid
