// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace plcgrid {

using BusId = std::int64_t;
using Complex = std::complex<double>;

enum class BusRole { generator, load, intermediate };
enum class BranchKind { line, switch_, transformer };
enum class BranchStatus { in_service, open };

std::string_view to_string(BusRole role);
std::string_view to_string(BranchKind kind);
std::string_view to_string(BranchStatus status);

std::optional<BusRole> parse_bus_role(std::string_view s);
std::optional<BranchKind> parse_branch_kind(std::string_view s);
std::optional<BranchStatus> parse_branch_status(std::string_view s);

struct Bus {
  BusId id = 0;
  std::optional<double> voltage_kv;  // unset when the bus file omits it
  BusRole role = BusRole::intermediate;

  bool operator==(const Bus&) const = default;
};

struct Branch {
  BusId from = 0;
  BusId to = 0;
  double length_m = 0.0;
  double r_ohm_per_km = 0.0;
  double x_ohm_per_km = 0.0;
  BranchKind kind = BranchKind::line;
  BranchStatus status = BranchStatus::in_service;

  bool in_service() const noexcept { return status == BranchStatus::in_service; }
  /// Series impedance z = (r + jx) * length_km, ohms.
  Complex series_impedance() const noexcept {
    return Complex(r_ohm_per_km, x_ohm_per_km) * (length_m / 1000.0);
  }

  bool operator==(const Branch&) const = default;
};

/// Which branches take part in matrices and metrics. Open branches are
/// retained in the graph but skipped unless asked for.
struct BranchFilter {
  bool include_open = false;

  bool accepts(const Branch& b) const noexcept {
    return include_open || b.in_service();
  }
};

/// Immutable bus/branch graph. Buses are kept sorted by id so that the bus
/// index used by every derived matrix is the rank of the id.
class GridGraph {
 public:
  /// Validates the invariants (unique ids, known endpoints, no self-loops,
  /// non-negative length and resistance, positive kv) and throws GridError.
  GridGraph(std::vector<Bus> buses, std::vector<Branch> branches,
            double mains_frequency_hz = 60.0);

  const std::vector<Bus>& buses() const noexcept { return buses_; }
  const std::vector<Branch>& branches() const noexcept { return branches_; }
  double mains_frequency_hz() const noexcept { return mains_frequency_hz_; }

  /// N.
  std::size_t bus_count() const noexcept { return buses_.size(); }
  /// m: distinct bus pairs joined by at least one accepted branch
  /// (parallel branches collapse to one edge).
  std::size_t edge_count(BranchFilter filter = {}) const;
  std::size_t branch_count(BranchFilter filter = {}) const;

  std::optional<std::size_t> index_of(BusId id) const;
  /// Like index_of but throws GridError for unknown ids.
  std::size_t require_index(BusId id) const;
  const Bus& bus(BusId id) const { return buses_[require_index(id)]; }

  bool operator==(const GridGraph&) const = default;

 private:
  std::vector<Bus> buses_;
  std::vector<Branch> branches_;
  double mains_frequency_hz_;
};

}  // namespace plcgrid
