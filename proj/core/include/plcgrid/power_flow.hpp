// SPDX-License-Identifier: Apache-2.0
//
// Network power-flow evaluation in per-unit: injected currents I = Y V,
// complex power S = V .* conj(I), the polar Jacobian of (P, Q) with respect
// to bus angles and magnitudes, and the five operating constraints
//   (a) power balance, (b) injection limits, (c) voltage band,
//   (d) branch current limits, (e) small-signal stability margin.
// This module evaluates and checks states; it does not solve for them.
#pragma once

#include <Eigen/Dense>
#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "plcgrid/grid.hpp"
#include "plcgrid/matrices.hpp"

namespace plcgrid {

struct PhasorState {
  Eigen::VectorXcd voltages;
  Eigen::VectorXcd currents;
  Eigen::VectorXcd powers;

  Eigen::Index size() const noexcept { return voltages.size(); }
};

/// Per-bus and per-branch bounds, per-unit. Branch limits follow the order
/// of accepted branches (incidence row order).
struct ConstraintLimits {
  Eigen::VectorXd p_min, p_max, q_min, q_max;
  Eigen::VectorXd v_min, v_max;
  Eigen::VectorXd i_line_max;
  double epsilon = 0.0;

  /// Same bounds on every bus / branch.
  static ConstraintLimits uniform(Eigen::Index buses, Eigen::Index branches, double p_min,
                                  double p_max, double q_min, double q_max, double v_min,
                                  double v_max, double i_line_max, double epsilon);
};

/// 2N x 2N matrix [dP/dangle dP/d|V|; dQ/dangle dQ/d|V|].
struct JacobianMatrix {
  Eigen::MatrixXd entries;

  Eigen::Index bus_count() const noexcept { return entries.rows() / 2; }
  auto dp_dangle() const { return entries.topLeftCorner(bus_count(), bus_count()); }
  auto dp_dmag() const { return entries.topRightCorner(bus_count(), bus_count()); }
  auto dq_dangle() const { return entries.bottomLeftCorner(bus_count(), bus_count()); }
  auto dq_dmag() const { return entries.bottomRightCorner(bus_count(), bus_count()); }
};

enum class StabilityMode { referenced, raw };

std::string_view to_string(StabilityMode mode);
std::optional<StabilityMode> parse_stability_mode(std::string_view s);

struct ConstraintOptions {
  StabilityMode mode = StabilityMode::referenced;
  /// Reference bus for the referenced mode; defaults to the first generator
  /// bus by id, or the lowest bus id when there is none.
  std::optional<BusId> slack_bus;
  /// Largest power-balance residual accepted by constraint (a).
  double balance_tolerance = 1e-8;
  /// Eigenvalue real parts within this distance of -epsilon still pass (e).
  double eigen_tolerance = 1e-9;
  AdmittanceOptions admittance;
};

/// `slack` is the signed margin to the bound: positive when satisfied,
/// negative by the amount of the worst violation.
struct ConstraintVerdict {
  bool passed = false;
  double slack = 0.0;
};

struct ConstraintReport {
  ConstraintVerdict balance;       // (a)
  ConstraintVerdict injection;     // (b)
  ConstraintVerdict voltage;       // (c)
  ConstraintVerdict line_current;  // (d)
  ConstraintVerdict stability;     // (e), in the selected mode
  double balance_residual = 0.0;
  double max_real_eig_referenced = 0.0;
  double max_real_eig_raw = 0.0;
  StabilityMode mode = StabilityMode::referenced;
  BusId slack_bus = 0;

  bool all_passed() const noexcept {
    return balance.passed && injection.passed && voltage.passed && line_current.passed &&
           stability.passed;
  }
};

Eigen::VectorXcd injected_currents(const AdmittanceMatrix& y, const Eigen::VectorXcd& v);
Eigen::VectorXcd injected_powers(const Eigen::VectorXcd& v, const Eigen::VectorXcd& i);
/// V, I = Y V and S = V .* conj(I) in one go.
PhasorState evaluate_state(const AdmittanceMatrix& y, const Eigen::VectorXcd& v);

/// Voltages from polar per-unit magnitude and angle in radians.
Eigen::VectorXcd polar_voltages(const Eigen::VectorXd& magnitude, const Eigen::VectorXd& angle);

/// Analytic Jacobian. Throws ModelError if any |V_k| is zero.
JacobianMatrix jacobian(const AdmittanceMatrix& y, const Eigen::VectorXcd& v);

/// Eigenvalues of a general real square matrix.
Eigen::VectorXcd eigenvalues(const Eigen::MatrixXd& m);

/// Matrix whose spectrum constraint (e) tests: the Jacobian of the balance
/// mismatch S - V .* conj(Y V), i.e. -J. In referenced mode the slack bus's
/// angle and magnitude rows/columns are removed.
Eigen::MatrixXd stability_matrix(const JacobianMatrix& j, StabilityMode mode,
                                 Eigen::Index slack_index);

/// y_pr(l) * (A V)_l for every accepted branch, incidence row order.
Eigen::VectorXcd branch_currents(const GridGraph& g, const Eigen::VectorXcd& v,
                                 const AdmittanceOptions& options = {});
/// Sum of Re(z_l) |I_l|^2 over accepted branches, per-unit.
double series_losses(const GridGraph& g, const Eigen::VectorXcd& v,
                     const AdmittanceOptions& options = {});

/// Throws DimensionError on size mismatches and ModelError when a limits
/// field is missing (empty) or inconsistent.
ConstraintReport check_constraints(const GridGraph& g, const PhasorState& state,
                                   const ConstraintLimits& limits,
                                   const ConstraintOptions& options = {});

// Columnar state file: bus_id,v_mag_pu,v_angle_deg,p_pu,q_pu
inline constexpr std::string_view kStateHeader = "bus_id,v_mag_pu,v_angle_deg,p_pu,q_pu";

/// Rows are matched to buses by id; currents are left empty. Throws
/// ParseError on malformed rows and DimensionError when the bus set differs
/// from the grid's.
PhasorState read_state(std::istream& in, const GridGraph& g);
void write_state(const GridGraph& g, const PhasorState& state, std::ostream& out);

/// Key-value limits file. Required keys: v_min v_max p_min p_max q_min q_max
/// i_line_max epsilon. Optional: base_kv base_mva slack_bus balance_tolerance.
struct LimitsConfig {
  ConstraintLimits limits;
  ConstraintOptions options;
};
LimitsConfig read_limits(std::istream& in, const GridGraph& g);

void write_verdicts(const ConstraintReport& r, std::ostream& out);

}  // namespace plcgrid
