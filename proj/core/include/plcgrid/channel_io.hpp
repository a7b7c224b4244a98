// SPDX-License-Identifier: Apache-2.0
//
// Channel description files.
//
// Multipath file: `key=value` preamble (v_p in m/s, a0, a1, k for
// alpha(f) = a0 + a1 f^k), then
//
//   gain,delay_us[,gain_imag]
//
// Chain file: optional preamble (zs_real, zs_imag, zl_real, zl_imag; source
// 0 ohm and load 50 ohm by default), then
//
//   length_m,z0_real,z0_imag,gamma_model[,role]
//
// gamma_model is `lossless(vp=...)` or `lossy(vp=...;a0=...;a1=...;k=...)`.
// role is `series` (default), `tap_open` or `tap_short`; a tap row hangs a
// single-section bridged tap at the current end of the link.
#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "plcgrid/multipath.hpp"
#include "plcgrid/two_port.hpp"

namespace plcgrid {

MultipathChannel read_channel(std::istream& in);

enum class SectionRole { series, tap_open, tap_short };

struct ChainSection {
  double length_m = 0.0;
  Complex z0{50.0, 0.0};
  std::string gamma_model;
  PropagationConstant gamma;
  SectionRole role = SectionRole::series;
};

struct ChainSpec {
  Complex source_impedance{0.0, 0.0};
  Complex load_impedance{50.0, 0.0};
  std::vector<ChainSection> sections;
};

/// Throws ParseError with the offending line.
PropagationConstant parse_gamma_model(std::string_view text, std::size_t line = 0);

ChainSpec read_chain(std::istream& in);

/// Series sections and shunt tap elements in file order. An empty result
/// stands for a direct connection.
std::vector<TwoPortNetwork> build_link(const ChainSpec& chain, std::span<const double> freqs_hz);

/// End-to-end V_load / V_source of the chain.
Eigen::VectorXcd chain_response(const ChainSpec& chain, std::span<const double> freqs_hz);

/// n points from fmin to fmax inclusive (n == 1 gives {fmin}).
std::vector<double> linear_grid(double fmin_hz, double fmax_hz, std::size_t n);

void write_transfer_function(std::ostream& os, std::span<const double> freqs_hz,
                             const Eigen::VectorXcd& h);
void write_impulse_response(std::ostream& os, const ImpulseResponse& h);

}  // namespace plcgrid
