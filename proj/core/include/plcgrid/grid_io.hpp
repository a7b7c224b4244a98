// SPDX-License-Identifier: Apache-2.0
//
// Edge-list ingestion and serialization.
//
// Branch file (header required):
//   bus_a,bus_b,length_m,r_ohm_per_km,x_ohm_per_km,kind,status
// Optional bus file (header required):
//   bus_id,kv,role
// kind in {line,switch,transformer}, status in {in_service,open},
// role in {generator,load,intermediate}; an empty kv means unspecified.
// Without a bus file the bus set is the set of branch endpoints.
#pragma once

#include <filesystem>
#include <istream>
#include <ostream>

#include "plcgrid/grid.hpp"

namespace plcgrid {

enum class GridFormat { edge_list };

inline constexpr std::string_view kBranchHeader =
    "bus_a,bus_b,length_m,r_ohm_per_km,x_ohm_per_km,kind,status";
inline constexpr std::string_view kBusHeader = "bus_id,kv,role";

/// Throws ParseError (with line number) on malformed rows or duplicate bus
/// ids, GridError on branches referencing a bus absent from the bus file.
GridGraph load_grid(std::istream& branches, std::istream* buses = nullptr,
                    GridFormat format = GridFormat::edge_list,
                    double mains_frequency_hz = 60.0);

GridGraph load_grid_files(const std::filesystem::path& branches,
                          const std::filesystem::path* buses = nullptr,
                          double mains_frequency_hz = 60.0);

/// Writes both files; numbers use shortest round-trip formatting so that
/// load(write(g)) == g.
void write_grid(const GridGraph& g, std::ostream& branches, std::ostream& buses);

}  // namespace plcgrid
