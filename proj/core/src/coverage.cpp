// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "plcgrid/errors.hpp"
#include "plcgrid/simple_graph.hpp"

namespace plcgrid {

std::string_view to_string(TransformerMode mode) {
  return mode == TransformerMode::blocked ? "blocked" : "passable";
}

std::optional<TransformerMode> parse_transformer_mode(std::string_view s) {
  if (s == "passable") return TransformerMode::passable;
  if (s == "blocked") return TransformerMode::blocked;
  return std::nullopt;
}

std::string_view to_string(CoverageStatus s) {
  switch (s) {
    case CoverageStatus::reachable: return "reachable";
    case CoverageStatus::repeater: return "repeater";
    case CoverageStatus::uncovered: return "uncovered";
  }
  return "uncovered";
}

void validate(const LinkBudget& budget) {
  if (!(budget.max_loss_db >= 0.0) || !std::isfinite(budget.max_loss_db)) {
    throw ModelError("max_loss_db must be finite and non-negative");
  }
  if (!(budget.per_coupler_loss_db >= 0.0) || !std::isfinite(budget.per_coupler_loss_db)) {
    throw ModelError("per_coupler_loss_db must be finite and non-negative");
  }
  if (!(budget.frequency_hz > 0.0)) throw ModelError("frequency_hz must be positive");
  if (!(budget.lv_max_kv <= budget.mv_max_kv)) throw ModelError("lv_max_kv exceeds mv_max_kv");
}

SegmentClass branch_class(const GridGraph& g, const Branch& b, const LinkBudget& budget) {
  const auto a = g.bus(b.from).voltage_kv;
  const auto c = g.bus(b.to).voltage_kv;
  if (!a && !c) {
    if (!budget.default_class) {
      throw ModelError("branch " + std::to_string(b.from) + "-" + std::to_string(b.to) +
                       " has no voltage and no default class is configured");
    }
    return *budget.default_class;
  }
  const double kv = std::max(a.value_or(0.0), c.value_or(0.0));
  if (kv <= budget.lv_max_kv) return SegmentClass::lv;
  if (kv <= budget.mv_max_kv) return budget.mv_class;
  return SegmentClass::hv_overhead;
}

double edge_loss_db(const Branch& b, SegmentClass cls, const LinkBudget& budget,
                    const PathLossTable& table) {
  double loss = pathloss_db(table, cls, budget.frequency_hz, b.length_m / 1000.0, budget.selector);
  if (b.kind == BranchKind::transformer || b.kind == BranchKind::switch_) {
    loss += budget.per_coupler_loss_db;
  }
  return loss;
}

double edge_loss_db(const GridGraph& g, const Branch& b, const LinkBudget& budget,
                    const PathLossTable& table) {
  return edge_loss_db(b, branch_class(g, b, budget), budget, table);
}

LossGraph::LossGraph(const GridGraph& g, const LinkBudget& budget, const PathLossTable& table)
    : arcs_(g.bus_count()) {
  validate(budget);
  for (const auto& b : g.branches()) {
    if (!b.in_service()) continue;
    if (b.kind == BranchKind::transformer && budget.transformer_mode == TransformerMode::blocked) {
      continue;
    }
    const double loss = edge_loss_db(g, b, budget, table);
    const auto u = g.require_index(b.from);
    const auto v = g.require_index(b.to);
    const auto relax = [loss](std::vector<Arc>& list, std::size_t to) {
      for (auto& arc : list) {
        if (arc.to == to) {
          arc.loss_db = std::min(arc.loss_db, loss);
          return;
        }
      }
      list.push_back({to, loss});
    };
    relax(arcs_[u], v);
    relax(arcs_[v], u);
  }
  for (auto& list : arcs_) {
    std::sort(list.begin(), list.end(), [](const Arc& x, const Arc& y) { return x.to < y.to; });
  }
}

std::vector<double> LossGraph::losses_from(std::span<const std::size_t> sources,
                                           double limit_db) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(arcs_.size(), inf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (const auto s : sources) {
    dist.at(s) = 0.0;
    heap.push({0.0, s});
  }
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const auto& arc : arcs_[u]) {
      const double nd = d + arc.loss_db;
      if (nd > limit_db + kLossTolerance) continue;
      if (nd < dist[arc.to]) {
        dist[arc.to] = nd;
        heap.push({nd, arc.to});
      }
    }
  }
  return dist;
}

std::vector<BusId> CoveragePlan::reachable() const {
  std::vector<BusId> out;
  for (const auto& b : buses) {
    if (b.status == CoverageStatus::reachable) out.push_back(b.id);
  }
  return out;
}

std::vector<BusId> CoveragePlan::uncovered() const {
  std::vector<BusId> out;
  for (const auto& b : buses) {
    if (b.status == CoverageStatus::uncovered) out.push_back(b.id);
  }
  return out;
}

double CoveragePlan::coverage_fraction() const {
  if (buses.empty()) return 0.0;
  const auto covered = std::count_if(buses.begin(), buses.end(), [](const BusCoverage& b) {
    return b.status != CoverageStatus::uncovered;
  });
  return static_cast<double>(covered) / static_cast<double>(buses.size());
}

double CoveragePlan::max_covered_loss_db() const {
  double m = 0.0;
  for (const auto& b : buses) {
    if (b.status != CoverageStatus::uncovered) m = std::max(m, b.loss_db);
  }
  return m;
}

namespace {

CoveragePlan make_plan(const GridGraph& g, BusId concentrator, const LinkBudget& budget,
                       const std::vector<std::size_t>& repeaters,
                       const std::vector<double>& loss) {
  CoveragePlan plan;
  plan.concentrator = concentrator;
  plan.max_loss_db = budget.max_loss_db;
  std::vector<bool> is_repeater(g.bus_count(), false);
  for (const auto r : repeaters) {
    is_repeater[r] = true;
    plan.repeaters.push_back(g.buses()[r].id);
  }
  plan.buses.reserve(g.bus_count());
  for (std::size_t v = 0; v < g.bus_count(); ++v) {
    CoverageStatus s = CoverageStatus::uncovered;
    if (is_repeater[v]) {
      s = CoverageStatus::repeater;
    } else if (loss[v] <= budget.max_loss_db + kLossTolerance) {
      s = CoverageStatus::reachable;
    }
    plan.buses.push_back({g.buses()[v].id, loss[v], s});
  }
  return plan;
}

}  // namespace

CoveragePlan coverage(const GridGraph& g, BusId concentrator, const LinkBudget& budget,
                      const PathLossTable& table) {
  const auto c = g.require_index(concentrator);
  const LossGraph lg(g, budget, table);
  const std::size_t src[] = {c};
  return make_plan(g, concentrator, budget, {}, lg.losses_from(src));
}

CoveragePlan place_repeaters(const GridGraph& g, BusId concentrator, const LinkBudget& budget,
                             const PathLossTable& table) {
  const auto c = g.require_index(concentrator);
  const LossGraph lg(g, budget, table);
  {
    std::vector<SimpleGraph::Edge> edges;
    for (std::size_t u = 0; u < lg.size(); ++u) {
      for (const auto& arc : lg.arcs(u)) edges.emplace_back(u, arc.to);
    }
    const SimpleGraph sg(lg.size(), edges);
    if (const auto k = sg.component_count(); k > 1) throw DisconnectedGraphError(k);
  }

  const double limit = budget.max_loss_db;
  const auto within = [limit](double l) { return l <= limit + kLossTolerance; };
  std::vector<std::size_t> sources = {c};
  auto loss = lg.losses_from(sources);
  std::vector<std::size_t> repeaters;
  std::vector<bool> is_source(g.bus_count(), false);
  is_source[c] = true;

  while (true) {
    std::vector<bool> uncovered(g.bus_count());
    bool any = false;
    for (std::size_t v = 0; v < g.bus_count(); ++v) {
      uncovered[v] = !within(loss[v]);
      any = any || uncovered[v];
    }
    if (!any) break;

    std::size_t best = g.bus_count();
    std::size_t best_gain = 0;
    for (std::size_t v = 0; v < g.bus_count(); ++v) {
      if (is_source[v] || uncovered[v]) continue;
      const std::size_t one[] = {v};
      const auto reach = lg.losses_from(one, limit);
      std::size_t gain = 0;
      for (std::size_t w = 0; w < g.bus_count(); ++w) {
        if (uncovered[w] && within(reach[w])) ++gain;
      }
      // Buses are sorted by id, so the first maximum has the lowest id.
      if (gain > best_gain) {
        best_gain = gain;
        best = v;
      }
    }
    if (best_gain == 0) break;
    is_source[best] = true;
    repeaters.push_back(best);
    sources.push_back(best);
    loss = lg.losses_from(sources);
  }
  return make_plan(g, concentrator, budget, repeaters, loss);
}

bool plan_is_valid(const GridGraph& g, const CoveragePlan& plan, const LinkBudget& budget,
                   const PathLossTable& table) {
  const LossGraph lg(g, budget, table);
  const auto within = [&](double l) { return l <= budget.max_loss_db + kLossTolerance; };
  std::vector<std::size_t> sources = {g.require_index(plan.concentrator)};
  for (const auto r : plan.repeaters) {
    const auto loss = lg.losses_from(sources);
    const auto idx = g.require_index(r);
    if (!within(loss[idx])) return false;
    sources.push_back(idx);
  }
  const auto loss = lg.losses_from(sources);
  return std::all_of(loss.begin(), loss.end(), within);
}

}  // namespace plcgrid
