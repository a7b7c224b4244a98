// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/power_flow.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include "plcgrid/errors.hpp"
#include "plcgrid/text.hpp"

namespace plcgrid {

std::string_view to_string(StabilityMode mode) {
  return mode == StabilityMode::referenced ? "referenced" : "raw";
}

std::optional<StabilityMode> parse_stability_mode(std::string_view s) {
  if (s == "referenced") return StabilityMode::referenced;
  if (s == "raw") return StabilityMode::raw;
  return std::nullopt;
}

ConstraintLimits ConstraintLimits::uniform(Eigen::Index buses, Eigen::Index branches,
                                           double p_min, double p_max, double q_min,
                                           double q_max, double v_min, double v_max,
                                           double i_line_max, double epsilon) {
  ConstraintLimits l;
  l.p_min = Eigen::VectorXd::Constant(buses, p_min);
  l.p_max = Eigen::VectorXd::Constant(buses, p_max);
  l.q_min = Eigen::VectorXd::Constant(buses, q_min);
  l.q_max = Eigen::VectorXd::Constant(buses, q_max);
  l.v_min = Eigen::VectorXd::Constant(buses, v_min);
  l.v_max = Eigen::VectorXd::Constant(buses, v_max);
  l.i_line_max = Eigen::VectorXd::Constant(branches, i_line_max);
  l.epsilon = epsilon;
  return l;
}

Eigen::VectorXcd injected_currents(const AdmittanceMatrix& y, const Eigen::VectorXcd& v) {
  if (y.size() != v.size()) {
    throw DimensionError("admittance matrix is " + std::to_string(y.size()) +
                         "x" + std::to_string(y.size()) + " but " +
                         std::to_string(v.size()) + " voltages were given");
  }
  return y.entries * v;
}

Eigen::VectorXcd injected_powers(const Eigen::VectorXcd& v, const Eigen::VectorXcd& i) {
  if (v.size() != i.size()) throw DimensionError("voltage and current vectors differ in length");
  return v.cwiseProduct(i.conjugate());
}

PhasorState evaluate_state(const AdmittanceMatrix& y, const Eigen::VectorXcd& v) {
  PhasorState s;
  s.voltages = v;
  s.currents = injected_currents(y, v);
  s.powers = injected_powers(v, s.currents);
  return s;
}

Eigen::VectorXcd polar_voltages(const Eigen::VectorXd& magnitude, const Eigen::VectorXd& angle) {
  if (magnitude.size() != angle.size()) throw DimensionError("magnitude/angle length mismatch");
  Eigen::VectorXcd v(magnitude.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = std::polar(magnitude(k), angle(k));
  return v;
}

JacobianMatrix jacobian(const AdmittanceMatrix& y, const Eigen::VectorXcd& v) {
  const Eigen::Index n = v.size();
  if (y.size() != n) throw DimensionError("admittance/voltage dimension mismatch");
  Eigen::VectorXcd unit(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::abs(v(k));
    if (mag == 0.0) throw ModelError("bus voltage magnitude is zero at index " + std::to_string(k));
    unit(k) = v(k) / mag;
  }
  const Eigen::VectorXcd current = y.entries * v;
  const Complex j1(0.0, 1.0);

  // dS/dangle = j diag(V) conj(diag(I) - Y diag(V))
  // dS/d|V|   = diag(V) conj(Y diag(V/|V|)) + conj(diag(I)) diag(V/|V|)
  Eigen::MatrixXcd ds_dangle = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd ds_dmag = Eigen::MatrixXcd::Zero(n, n);
  for (int col = 0; col < y.entries.outerSize(); ++col) {
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(y.entries, col); it; ++it) {
      const auto i = it.row();
      const auto k = it.col();
      ds_dangle(i, k) -= j1 * v(i) * std::conj(it.value() * v(k));
      ds_dmag(i, k) += v(i) * std::conj(it.value() * unit(k));
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    ds_dangle(i, i) += j1 * v(i) * std::conj(current(i));
    ds_dmag(i, i) += std::conj(current(i)) * unit(i);
  }

  JacobianMatrix jac;
  jac.entries.resize(2 * n, 2 * n);
  jac.entries.topLeftCorner(n, n) = ds_dangle.real();
  jac.entries.topRightCorner(n, n) = ds_dmag.real();
  jac.entries.bottomLeftCorner(n, n) = ds_dangle.imag();
  jac.entries.bottomRightCorner(n, n) = ds_dmag.imag();
  return jac;
}

Eigen::VectorXcd eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return {};
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  if (solver.info() != Eigen::Success) throw ModelError("eigenvalue computation did not converge");
  return solver.eigenvalues();
}

Eigen::MatrixXd stability_matrix(const JacobianMatrix& j, StabilityMode mode,
                                 Eigen::Index slack_index) {
  const Eigen::MatrixXd mismatch = -j.entries;
  if (mode == StabilityMode::raw) return mismatch;
  const Eigen::Index n = j.bus_count();
  if (slack_index < 0 || slack_index >= n) throw ModelError("slack bus index out of range");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index r = 0; r < 2 * n; ++r) {
    if (r != slack_index && r != n + slack_index) keep.push_back(r);
  }
  const auto m = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      out(a, b) = mismatch(keep[static_cast<std::size_t>(a)], keep[static_cast<std::size_t>(b)]);
    }
  }
  return out;
}

Eigen::VectorXcd branch_currents(const GridGraph& g, const Eigen::VectorXcd& v,
                                 const AdmittanceOptions& options) {
  if (static_cast<std::size_t>(v.size()) != g.bus_count()) {
    throw DimensionError("voltage vector does not match bus count");
  }
  const auto a = incidence_matrix(g, options.filter);
  const Eigen::VectorXcd y = branch_admittances(g, options);
  const Eigen::VectorXcd drop = a.entries.cast<Complex>() * v;
  return y.cwiseProduct(drop);
}

double series_losses(const GridGraph& g, const Eigen::VectorXcd& v,
                     const AdmittanceOptions& options) {
  const Eigen::VectorXcd y = branch_admittances(g, options);
  const Eigen::VectorXcd current = branch_currents(g, v, options);
  double losses = 0.0;
  for (Eigen::Index l = 0; l < y.size(); ++l) {
    losses += (1.0 / y(l)).real() * std::norm(current(l));
  }
  return losses;
}

namespace {

void require_length(const Eigen::VectorXd& v, Eigen::Index n, const char* name) {
  if (v.size() == 0) throw ModelError(std::string("missing limits field '") + name + "'");
  if (v.size() != n) {
    throw DimensionError(std::string("limits field '") + name + "' has " +
                         std::to_string(v.size()) + " entries, expected " + std::to_string(n));
  }
}

BusId default_slack(const GridGraph& g) {
  for (const auto& b : g.buses()) {
    if (b.role == BusRole::generator) return b.id;
  }
  return g.buses().front().id;
}

}  // namespace

ConstraintReport check_constraints(const GridGraph& g, const PhasorState& state,
                                   const ConstraintLimits& limits,
                                   const ConstraintOptions& options) {
  const auto n = static_cast<Eigen::Index>(g.bus_count());
  if (n == 0) throw ModelError("grid has no buses");
  if (state.voltages.size() != n || state.powers.size() != n) {
    throw DimensionError("state has " + std::to_string(state.voltages.size()) +
                         " buses, grid has " + std::to_string(n));
  }
  const auto branches = static_cast<Eigen::Index>(g.branch_count(options.admittance.filter));
  require_length(limits.p_min, n, "p_min");
  require_length(limits.p_max, n, "p_max");
  require_length(limits.q_min, n, "q_min");
  require_length(limits.q_max, n, "q_max");
  require_length(limits.v_min, n, "v_min");
  require_length(limits.v_max, n, "v_max");
  if (limits.i_line_max.size() != branches) {
    if (limits.i_line_max.size() == 0 && branches > 0) {
      throw ModelError("missing limits field 'i_line_max'");
    }
    throw DimensionError("limits field 'i_line_max' does not match branch count");
  }
  if (!(limits.epsilon >= 0.0)) throw ModelError("epsilon must be non-negative");
  if ((limits.v_min.array() >= limits.v_max.array()).any()) {
    throw ModelError("v_min must be below v_max");
  }

  ConstraintReport r;
  r.mode = options.mode;
  const auto y = admittance_matrix(g, options.admittance);
  const Eigen::VectorXcd& v = state.voltages;

  // (a) S = V .* conj(Y V)
  const Eigen::VectorXcd computed = injected_powers(v, injected_currents(y, v));
  r.balance_residual = (state.powers - computed).cwiseAbs().maxCoeff();
  r.balance.slack = options.balance_tolerance - r.balance_residual;
  r.balance.passed = r.balance.slack >= 0.0;

  // (b) component-wise on P and Q
  const Eigen::VectorXd p = state.powers.real();
  const Eigen::VectorXd q = state.powers.imag();
  r.injection.slack = std::min({(p - limits.p_min).minCoeff(), (limits.p_max - p).minCoeff(),
                                (q - limits.q_min).minCoeff(), (limits.q_max - q).minCoeff()});
  r.injection.passed = r.injection.slack >= 0.0;

  // (c)
  const Eigen::VectorXd mag = v.cwiseAbs();
  r.voltage.slack = std::min((mag - limits.v_min).minCoeff(), (limits.v_max - mag).minCoeff());
  r.voltage.passed = r.voltage.slack >= 0.0;

  // (d) per branch
  if (branches > 0) {
    const Eigen::VectorXd current = branch_currents(g, v, options.admittance).cwiseAbs();
    r.line_current.slack = (limits.i_line_max - current).minCoeff();
  } else {
    r.line_current.slack = std::numeric_limits<double>::infinity();
  }
  r.line_current.passed = r.line_current.slack >= 0.0;

  // (e) both modes are always evaluated; the selected one decides.
  r.slack_bus = options.slack_bus.value_or(default_slack(g));
  const auto slack_index = static_cast<Eigen::Index>(g.require_index(r.slack_bus));
  const auto jac = jacobian(y, v);
  auto max_real = [](const Eigen::MatrixXd& m) {
    const Eigen::VectorXcd ev = eigenvalues(m);
    return ev.size() == 0 ? -std::numeric_limits<double>::infinity() : ev.real().maxCoeff();
  };
  r.max_real_eig_raw = max_real(stability_matrix(jac, StabilityMode::raw, slack_index));
  r.max_real_eig_referenced =
      max_real(stability_matrix(jac, StabilityMode::referenced, slack_index));
  const double measured = options.mode == StabilityMode::referenced ? r.max_real_eig_referenced
                                                                     : r.max_real_eig_raw;
  r.stability.slack = -limits.epsilon - measured;
  r.stability.passed = r.stability.slack >= -options.eigen_tolerance;
  return r;
}

PhasorState read_state(std::istream& in, const GridGraph& g) {
  text::LineReader reader(in);
  std::string line;
  bool header = false;
  const auto n = static_cast<Eigen::Index>(g.bus_count());
  Eigen::VectorXd mag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd ang = Eigen::VectorXd::Zero(n);
  Eigen::VectorXcd s = Eigen::VectorXcd::Zero(n);
  std::set<BusId> seen;
  while (reader.next(line)) {
    if (text::trim(line).empty()) continue;
    const auto row = reader.line_number();
    const auto f = text::split(line);
    if (!header) {
      if (f != text::split(kStateHeader)) {
        throw ParseError(row, "state header must be '" + std::string(kStateHeader) + "'");
      }
      header = true;
      continue;
    }
    if (f.size() != 5) throw ParseError(row, "expected 5 fields in state row");
    const BusId id = text::parse_int(f[0], row, "bus_id");
    const auto idx = g.index_of(id);
    if (!idx) throw DimensionError("state references bus " + std::to_string(id) + " not in grid");
    if (!seen.insert(id).second) throw ParseError(row, "duplicate bus " + std::to_string(id));
    const auto k = static_cast<Eigen::Index>(*idx);
    mag(k) = text::parse_double(f[1], row, "v_mag_pu");
    ang(k) = text::parse_double(f[2], row, "v_angle_deg") * std::numbers::pi / 180.0;
    s(k) = Complex(text::parse_double(f[3], row, "p_pu"), text::parse_double(f[4], row, "q_pu"));
  }
  if (!header) throw ParseError(reader.line_number(), "state file is empty");
  if (static_cast<Eigen::Index>(seen.size()) != n) {
    throw DimensionError("state has " + std::to_string(seen.size()) + " buses, grid has " +
                         std::to_string(n));
  }
  PhasorState state;
  state.voltages = polar_voltages(mag, ang);
  state.powers = s;
  return state;
}

void write_state(const GridGraph& g, const PhasorState& state, std::ostream& out) {
  out << kStateHeader << '\n';
  for (std::size_t k = 0; k < g.bus_count(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    out << g.buses()[k].id << ',' << text::format_double(std::abs(state.voltages(i))) << ','
        << text::format_double(std::arg(state.voltages(i)) * 180.0 / std::numbers::pi) << ','
        << text::format_double(state.powers(i).real()) << ','
        << text::format_double(state.powers(i).imag()) << '\n';
  }
}

LimitsConfig read_limits(std::istream& in, const GridGraph& g) {
  const auto kv = text::KeyValues::parse(in);
  LimitsConfig cfg;
  if (kv.contains("base_kv")) cfg.options.admittance.base.kv = kv.require_double("base_kv");
  if (kv.contains("base_mva")) cfg.options.admittance.base.mva = kv.require_double("base_mva");
  if (!(cfg.options.admittance.base.kv > 0.0) || !(cfg.options.admittance.base.mva > 0.0)) {
    throw ParseError(0, "per-unit base must be positive");
  }
  if (kv.contains("slack_bus")) cfg.options.slack_bus = kv.require_int("slack_bus");
  cfg.options.balance_tolerance = kv.get_double("balance_tolerance", cfg.options.balance_tolerance);
  const auto n = static_cast<Eigen::Index>(g.bus_count());
  const auto m = static_cast<Eigen::Index>(g.branch_count(cfg.options.admittance.filter));
  cfg.limits = ConstraintLimits::uniform(
      n, m, kv.require_double("p_min"), kv.require_double("p_max"), kv.require_double("q_min"),
      kv.require_double("q_max"), kv.require_double("v_min"), kv.require_double("v_max"),
      kv.require_double("i_line_max"), kv.require_double("epsilon"));
  if (cfg.limits.epsilon < 0.0) throw ParseError(0, "epsilon must be non-negative");
  return cfg;
}

void write_verdicts(const ConstraintReport& r, std::ostream& out) {
  auto line = [&](const char* name, const ConstraintVerdict& v) {
    out << name << ".pass=" << (v.passed ? "true" : "false") << '\n'
        << name << ".slack=" << text::format_double(v.slack) << '\n';
  };
  line("a_power_balance", r.balance);
  line("b_injection_limits", r.injection);
  line("c_voltage_band", r.voltage);
  line("d_line_current", r.line_current);
  line("e_stability", r.stability);
  out << "balance_residual=" << text::format_double(r.balance_residual) << '\n'
      << "stability_mode=" << to_string(r.mode) << '\n'
      << "slack_bus=" << r.slack_bus << '\n'
      << "max_real_eig_referenced=" << text::format_double(r.max_real_eig_referenced) << '\n'
      << "max_real_eig_raw=" << text::format_double(r.max_real_eig_raw) << '\n'
      << "all_pass=" << (r.all_passed() ? "true" : "false") << '\n';
}

}  // namespace plcgrid
