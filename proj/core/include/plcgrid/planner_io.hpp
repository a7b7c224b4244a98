// SPDX-License-Identifier: Apache-2.0
//
// Planner configuration files (flat key=value) and plan serialization.
//
// Generator spec keys: n_nodes, kind (radial|ring|interconnected),
// degree_pmf ("1:0.16;2:0.6;..."), branch_length_mean_m, chord_fraction,
// ring_size, seed, voltage_kv, r_ohm_per_km, x_ohm_per_km.
//
// Link budget keys: max_loss_db, frequency_hz, per_coupler_loss_db,
// transformer_mode (passable|blocked), selector
// (optimistic|midpoint|pessimistic), lv_max_kv, mv_max_kv, mv_class,
// default_class.
#pragma once

#include <istream>
#include <ostream>

#include "plcgrid/coverage.hpp"
#include "plcgrid/generator.hpp"

namespace plcgrid {

/// Throws ParseError for malformed or unknown keys and ModelError when the
/// spec is invalid.
GeneratorSpec read_generator_spec(std::istream& in);
LinkBudget read_link_budget(std::istream& in);

DegreeDistribution parse_degree_pmf(std::string_view text, std::size_t line = 0);

/// bus_id,loss_db,status
void write_plan(const CoveragePlan& plan, std::ostream& out);
/// key=value summary: repeaters, coverage, max loss.
void write_plan_summary(const CoveragePlan& plan, std::ostream& out);

}  // namespace plcgrid
