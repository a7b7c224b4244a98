// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/grid.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "plcgrid/errors.hpp"

namespace plcgrid {

std::string_view to_string(BusRole role) {
  switch (role) {
    case BusRole::generator: return "generator";
    case BusRole::load: return "load";
    case BusRole::intermediate: return "intermediate";
  }
  return "intermediate";
}

std::string_view to_string(BranchKind kind) {
  switch (kind) {
    case BranchKind::line: return "line";
    case BranchKind::switch_: return "switch";
    case BranchKind::transformer: return "transformer";
  }
  return "line";
}

std::string_view to_string(BranchStatus status) {
  return status == BranchStatus::in_service ? "in_service" : "open";
}

std::optional<BusRole> parse_bus_role(std::string_view s) {
  if (s == "generator") return BusRole::generator;
  if (s == "load") return BusRole::load;
  if (s == "intermediate") return BusRole::intermediate;
  return std::nullopt;
}

std::optional<BranchKind> parse_branch_kind(std::string_view s) {
  if (s == "line") return BranchKind::line;
  if (s == "switch") return BranchKind::switch_;
  if (s == "transformer") return BranchKind::transformer;
  return std::nullopt;
}

std::optional<BranchStatus> parse_branch_status(std::string_view s) {
  if (s == "in_service") return BranchStatus::in_service;
  if (s == "open") return BranchStatus::open;
  return std::nullopt;
}

GridGraph::GridGraph(std::vector<Bus> buses, std::vector<Branch> branches,
                     double mains_frequency_hz)
    : buses_(std::move(buses)),
      branches_(std::move(branches)),
      mains_frequency_hz_(mains_frequency_hz) {
  if (!(mains_frequency_hz_ > 0.0)) {
    throw GridError("mains frequency must be positive");
  }
  std::sort(buses_.begin(), buses_.end(),
            [](const Bus& a, const Bus& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < buses_.size(); ++i) {
    if (i > 0 && buses_[i].id == buses_[i - 1].id) {
      throw GridError("duplicate bus id " + std::to_string(buses_[i].id));
    }
    if (buses_[i].voltage_kv && !(*buses_[i].voltage_kv > 0.0)) {
      throw GridError("bus " + std::to_string(buses_[i].id) +
                      ": voltage level must be positive");
    }
  }
  for (const auto& br : branches_) {
    for (const BusId end : {br.from, br.to}) {
      if (!index_of(end)) {
        throw GridError("branch " + std::to_string(br.from) + "-" +
                        std::to_string(br.to) + " references unknown bus " +
                        std::to_string(end));
      }
    }
    if (br.from == br.to) {
      throw GridError("self-loop at bus " + std::to_string(br.from));
    }
    if (!(br.length_m >= 0.0) || !std::isfinite(br.length_m)) {
      throw GridError("branch " + std::to_string(br.from) + "-" +
                      std::to_string(br.to) + ": negative length");
    }
    if (!(br.r_ohm_per_km >= 0.0) || !std::isfinite(br.x_ohm_per_km)) {
      throw GridError("branch " + std::to_string(br.from) + "-" +
                      std::to_string(br.to) + ": invalid impedance");
    }
  }
}

std::size_t GridGraph::edge_count(BranchFilter filter) const {
  std::set<std::pair<BusId, BusId>> pairs;
  for (const auto& br : branches_) {
    if (!filter.accepts(br)) continue;
    pairs.emplace(std::min(br.from, br.to), std::max(br.from, br.to));
  }
  return pairs.size();
}

std::size_t GridGraph::branch_count(BranchFilter filter) const {
  return static_cast<std::size_t>(
      std::count_if(branches_.begin(), branches_.end(),
                    [&](const Branch& b) { return filter.accepts(b); }));
}

std::optional<std::size_t> GridGraph::index_of(BusId id) const {
  const auto it = std::lower_bound(
      buses_.begin(), buses_.end(), id,
      [](const Bus& b, BusId value) { return b.id < value; });
  if (it == buses_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - buses_.begin());
}

std::size_t GridGraph::require_index(BusId id) const {
  const auto idx = index_of(id);
  if (!idx) throw GridError("unknown bus " + std::to_string(id));
  return *idx;
}

}  // namespace plcgrid
