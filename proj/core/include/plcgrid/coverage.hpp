// SPDX-License-Identifier: Apache-2.0
//
// PLC reach over a grid under a link budget, and greedy repeater placement.
#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "plcgrid/grid.hpp"
#include "plcgrid/path_loss.hpp"

namespace plcgrid {

enum class TransformerMode { passable, blocked };

std::string_view to_string(TransformerMode mode);
std::optional<TransformerMode> parse_transformer_mode(std::string_view s);

struct LinkBudget {
  double max_loss_db = 0.0;
  double frequency_hz = 1e6;
  double per_coupler_loss_db = 0.0;
  /// passable: transformers carry the signal at per_coupler_loss_db;
  /// blocked: they stop it.
  TransformerMode transformer_mode = TransformerMode::passable;
  LossSelector selector = LossSelector::midpoint;
  /// Branch class from its voltage (the larger known endpoint kv):
  /// kv <= lv_max_kv -> LV, kv <= mv_max_kv -> mv_class, else HV_overhead.
  double lv_max_kv = 1.0;
  double mv_max_kv = 69.0;
  SegmentClass mv_class = SegmentClass::mv_overhead;
  /// Class for branches whose endpoints have no voltage; unset -> error.
  std::optional<SegmentClass> default_class;
};

/// Throws ModelError unless max_loss_db >= 0, per_coupler_loss_db >= 0,
/// frequency > 0 and lv_max_kv <= mv_max_kv.
void validate(const LinkBudget& budget);

/// Class of a branch from its endpoint voltages. Throws ModelError when
/// neither endpoint has a voltage and no default class is configured.
SegmentClass branch_class(const GridGraph& g, const Branch& b, const LinkBudget& budget);

/// pathloss_db over the branch length plus per_coupler_loss_db for
/// transformers and switches.
double edge_loss_db(const Branch& b, SegmentClass cls, const LinkBudget& budget,
                    const PathLossTable& table);
double edge_loss_db(const GridGraph& g, const Branch& b, const LinkBudget& budget,
                    const PathLossTable& table);

/// Losses are compared against the budget with this slack, dB.
inline constexpr double kLossTolerance = 1e-9;

/// Weighted adjacency of the signal graph: in-service branches, minus
/// blocked transformers, parallel branches reduced to the cheapest.
class LossGraph {
 public:
  struct Arc {
    std::size_t to;
    double loss_db;
  };

  LossGraph(const GridGraph& g, const LinkBudget& budget, const PathLossTable& table);

  std::size_t size() const noexcept { return arcs_.size(); }
  const std::vector<Arc>& arcs(std::size_t v) const { return arcs_[v]; }

  /// Minimum accumulated loss from the nearest source; +inf when
  /// unreachable. Exploration stops beyond `limit_db`.
  std::vector<double> losses_from(std::span<const std::size_t> sources,
                                  double limit_db = std::numeric_limits<double>::infinity()) const;

 private:
  std::vector<std::vector<Arc>> arcs_;
};

enum class CoverageStatus { reachable, repeater, uncovered };
std::string_view to_string(CoverageStatus s);

struct BusCoverage {
  BusId id = 0;
  /// Loss from the nearest signal source (concentrator or repeater).
  double loss_db = 0.0;
  CoverageStatus status = CoverageStatus::uncovered;
};

struct CoveragePlan {
  BusId concentrator = 0;
  double max_loss_db = 0.0;
  std::vector<BusId> repeaters;  // in placement order
  std::vector<BusCoverage> buses;  // sorted by id

  std::vector<BusId> reachable() const;
  std::vector<BusId> uncovered() const;
  /// Fraction of buses that are reachable or repeaters.
  double coverage_fraction() const;
  /// Largest loss among covered buses.
  double max_covered_loss_db() const;
};

/// Single-source reach from the concentrator. Throws GridError for an
/// unknown concentrator.
CoveragePlan coverage(const GridGraph& g, BusId concentrator, const LinkBudget& budget,
                      const PathLossTable& table);

/// Greedy placement: while buses remain uncovered, promote the covered bus
/// that newly covers the most of them (ties: lowest id). Stops early, with
/// buses left uncovered, when no position helps (a single hop exceeds the
/// budget). Throws GridError for an unknown concentrator and
/// DisconnectedGraphError when the signal graph is disconnected.
CoveragePlan place_repeaters(const GridGraph& g, BusId concentrator, const LinkBudget& budget,
                             const PathLossTable& table);

/// Every bus is within budget of the concentrator or a repeater, and each
/// repeater is within budget of the concentrator or an earlier repeater.
bool plan_is_valid(const GridGraph& g, const CoveragePlan& plan, const LinkBudget& budget,
                   const PathLossTable& table);

}  // namespace plcgrid
