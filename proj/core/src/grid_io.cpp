// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/grid_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <string>

#include "plcgrid/errors.hpp"
#include "plcgrid/text.hpp"

namespace plcgrid {

namespace {

void expect_header(text::LineReader& reader, std::string_view header,
                   std::string_view what) {
  std::string line;
  while (reader.next(line)) {
    if (text::trim(line).empty()) continue;
    const auto got = text::split(line);
    const auto want = text::split(header);
    if (got != want) {
      throw ParseError(reader.line_number(),
                       std::string(what) + " header must be '" +
                           std::string(header) + "'");
    }
    return;
  }
  throw ParseError(reader.line_number(), std::string(what) + " file is empty");
}

std::vector<Bus> read_buses(std::istream& in) {
  text::LineReader reader(in);
  expect_header(reader, kBusHeader, "bus");
  std::vector<Bus> buses;
  std::set<BusId> seen;
  std::string line;
  while (reader.next(line)) {
    if (text::trim(line).empty()) continue;
    const auto n = reader.line_number();
    const auto f = text::split(line);
    if (f.size() != 3) throw ParseError(n, "expected 3 fields in bus row");
    Bus bus;
    bus.id = text::parse_int(f[0], n, "bus_id");
    if (!f[1].empty() && f[1] != "unspecified") {
      const double kv = text::parse_double(f[1], n, "kv");
      if (!(kv > 0.0)) throw ParseError(n, "kv must be positive");
      bus.voltage_kv = kv;
    }
    if (!f[2].empty()) {
      const auto role = parse_bus_role(f[2]);
      if (!role) throw ParseError(n, "unknown role '" + std::string(f[2]) + "'");
      bus.role = *role;
    }
    if (!seen.insert(bus.id).second) {
      throw ParseError(n, "duplicate bus id " + std::to_string(bus.id));
    }
    buses.push_back(bus);
  }
  return buses;
}

}  // namespace

GridGraph load_grid(std::istream& branches_in, std::istream* buses_in,
                    GridFormat format, double mains_frequency_hz) {
  if (format != GridFormat::edge_list) throw ParseError(0, "unsupported format");

  std::vector<Bus> buses;
  std::set<BusId> known;
  if (buses_in != nullptr) {
    buses = read_buses(*buses_in);
    for (const auto& b : buses) known.insert(b.id);
  }

  text::LineReader reader(branches_in);
  expect_header(reader, kBranchHeader, "branch");
  std::vector<Branch> branches;
  std::set<BusId> implied;
  std::string line;
  while (reader.next(line)) {
    if (text::trim(line).empty()) continue;
    const auto n = reader.line_number();
    const auto f = text::split(line);
    if (f.size() != 7) throw ParseError(n, "expected 7 fields in branch row");
    Branch br;
    br.from = text::parse_int(f[0], n, "bus_a");
    br.to = text::parse_int(f[1], n, "bus_b");
    br.length_m = text::parse_double(f[2], n, "length_m");
    br.r_ohm_per_km = text::parse_double(f[3], n, "r_ohm_per_km");
    br.x_ohm_per_km = text::parse_double(f[4], n, "x_ohm_per_km");
    const auto kind = parse_branch_kind(f[5]);
    if (!kind) throw ParseError(n, "unknown kind '" + std::string(f[5]) + "'");
    br.kind = *kind;
    const auto status = parse_branch_status(f[6]);
    if (!status) throw ParseError(n, "unknown status '" + std::string(f[6]) + "'");
    br.status = *status;

    if (br.from == br.to) throw ParseError(n, "self-loop branch");
    if (br.length_m < 0.0) throw ParseError(n, "negative length");
    if (br.r_ohm_per_km < 0.0) throw ParseError(n, "negative resistance");
    if (buses_in != nullptr) {
      for (const BusId end : {br.from, br.to}) {
        if (!known.count(end)) {
          throw GridError("line " + std::to_string(n) +
                          ": branch references unknown bus " +
                          std::to_string(end));
        }
      }
    } else {
      implied.insert(br.from);
      implied.insert(br.to);
    }
    branches.push_back(br);
  }

  if (buses_in == nullptr) {
    for (const BusId id : implied) buses.push_back(Bus{id, std::nullopt, BusRole::intermediate});
  }
  return GridGraph(std::move(buses), std::move(branches), mains_frequency_hz);
}

GridGraph load_grid_files(const std::filesystem::path& branches,
                          const std::filesystem::path* buses,
                          double mains_frequency_hz) {
  std::ifstream bin(branches, std::ios::binary);
  if (!bin) throw ParseError(0, "cannot open " + branches.string());
  if (buses == nullptr) return load_grid(bin, nullptr, GridFormat::edge_list, mains_frequency_hz);
  std::ifstream uin(*buses, std::ios::binary);
  if (!uin) throw ParseError(0, "cannot open " + buses->string());
  return load_grid(bin, &uin, GridFormat::edge_list, mains_frequency_hz);
}

void write_grid(const GridGraph& g, std::ostream& branches, std::ostream& buses) {
  branches << kBranchHeader << '\n';
  for (const auto& br : g.branches()) {
    branches << br.from << ',' << br.to << ',' << text::format_double(br.length_m)
             << ',' << text::format_double(br.r_ohm_per_km) << ','
             << text::format_double(br.x_ohm_per_km) << ',' << to_string(br.kind)
             << ',' << to_string(br.status) << '\n';
  }
  buses << kBusHeader << '\n';
  for (const auto& b : g.buses()) {
    buses << b.id << ',';
    if (b.voltage_kv) buses << text::format_double(*b.voltage_kv);
    buses << ',' << to_string(b.role) << '\n';
  }
}

}  // namespace plcgrid
