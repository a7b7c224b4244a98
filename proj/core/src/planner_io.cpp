// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/planner_io.hpp"

#include <cmath>
#include <set>
#include <string>

#include "plcgrid/errors.hpp"
#include "plcgrid/text.hpp"

namespace plcgrid {

namespace {

void reject_unknown(const text::KeyValues& kv, const std::set<std::string>& known,
                    std::string_view what) {
  for (const auto& key : kv.keys()) {
    if (!known.count(key)) {
      throw ParseError(0, "unknown " + std::string(what) + " key '" + key + "'");
    }
  }
}

std::size_t require_count(const text::KeyValues& kv, const std::string& key) {
  const auto v = kv.require_int(key);
  if (v < 0) throw ParseError(0, "'" + key + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

SegmentClass require_class(const std::string& value, const std::string& key) {
  const auto c = parse_segment_class(value);
  if (!c) throw ParseError(0, "unknown segment class '" + value + "' for '" + key + "'");
  return *c;
}

}  // namespace

DegreeDistribution parse_degree_pmf(std::string_view spec, std::size_t line) {
  DegreeDistribution pmf;
  for (auto part : text::split(spec, ';')) {
    part = text::trim(part);
    if (part.empty()) continue;
    const auto colon = part.find(':');
    if (colon == std::string_view::npos) throw ParseError(line, "degree pmf entry needs ':'");
    const auto d = text::parse_int(text::trim(part.substr(0, colon)), line, "degree");
    const auto p = text::parse_double(text::trim(part.substr(colon + 1)), line, "probability");
    if (d < 0) throw ParseError(line, "degree must be non-negative");
    if (!pmf.emplace(static_cast<std::size_t>(d), p).second) {
      throw ParseError(line, "degree " + std::to_string(d) + " listed twice");
    }
  }
  if (pmf.empty()) throw ParseError(line, "degree pmf is empty");
  return pmf;
}

GeneratorSpec read_generator_spec(std::istream& in) {
  const auto kv = text::KeyValues::parse(in);
  reject_unknown(kv,
                 {"n_nodes", "kind", "degree_pmf", "branch_length_mean_m", "chord_fraction",
                  "ring_size", "seed", "voltage_kv", "r_ohm_per_km", "x_ohm_per_km"},
                 "generator");
  GeneratorSpec spec;
  spec.n_nodes = require_count(kv, "n_nodes");
  if (const auto k = kv.get("kind")) {
    const auto kind = parse_topology_kind(*k);
    if (!kind) throw ParseError(0, "unknown topology kind '" + *k + "'");
    spec.kind = *kind;
  }
  if (const auto p = kv.get("degree_pmf")) spec.degree_pmf = parse_degree_pmf(*p);
  spec.branch_length_mean_m = kv.get_double("branch_length_mean_m", spec.branch_length_mean_m);
  spec.chord_fraction = kv.get_double("chord_fraction", spec.chord_fraction);
  if (kv.contains("ring_size")) spec.ring_size = require_count(kv, "ring_size");
  if (kv.contains("seed")) {
    const auto s = kv.require_int("seed");
    if (s < 0) throw ParseError(0, "seed must be non-negative");
    spec.seed = static_cast<std::uint64_t>(s);
  }
  spec.voltage_kv = kv.get_double("voltage_kv", spec.voltage_kv);
  spec.r_ohm_per_km = kv.get_double("r_ohm_per_km", spec.r_ohm_per_km);
  spec.x_ohm_per_km = kv.get_double("x_ohm_per_km", spec.x_ohm_per_km);
  validate(spec);
  return spec;
}

LinkBudget read_link_budget(std::istream& in) {
  const auto kv = text::KeyValues::parse(in);
  reject_unknown(kv,
                 {"max_loss_db", "frequency_hz", "per_coupler_loss_db", "transformer_mode",
                  "selector", "lv_max_kv", "mv_max_kv", "mv_class", "default_class"},
                 "budget");
  LinkBudget b;
  b.max_loss_db = kv.require_double("max_loss_db");
  b.frequency_hz = kv.get_double("frequency_hz", b.frequency_hz);
  b.per_coupler_loss_db = kv.get_double("per_coupler_loss_db", b.per_coupler_loss_db);
  if (const auto m = kv.get("transformer_mode")) {
    const auto mode = parse_transformer_mode(*m);
    if (!mode) throw ParseError(0, "unknown transformer_mode '" + *m + "'");
    b.transformer_mode = *mode;
  }
  if (const auto s = kv.get("selector")) {
    if (*s == "optimistic") {
      b.selector = LossSelector::optimistic;
    } else if (*s == "midpoint") {
      b.selector = LossSelector::midpoint;
    } else if (*s == "pessimistic") {
      b.selector = LossSelector::pessimistic;
    } else {
      throw ParseError(0, "unknown selector '" + *s + "'");
    }
  }
  b.lv_max_kv = kv.get_double("lv_max_kv", b.lv_max_kv);
  b.mv_max_kv = kv.get_double("mv_max_kv", b.mv_max_kv);
  if (const auto c = kv.get("mv_class")) b.mv_class = require_class(*c, "mv_class");
  if (const auto c = kv.get("default_class")) b.default_class = require_class(*c, "default_class");
  validate(b);
  return b;
}

void write_plan(const CoveragePlan& plan, std::ostream& out) {
  out << "bus_id,loss_db,status\n";
  for (const auto& b : plan.buses) {
    out << b.id << ',' << (std::isinf(b.loss_db) ? std::string("inf") : text::format_double(b.loss_db))
        << ',' << to_string(b.status) << '\n';
  }
}

void write_plan_summary(const CoveragePlan& plan, std::ostream& out) {
  out << "concentrator=" << plan.concentrator << '\n';
  out << "max_loss_db=" << text::format_double(plan.max_loss_db) << '\n';
  out << "repeater_count=" << plan.repeaters.size() << '\n';
  out << "repeaters=";
  for (std::size_t i = 0; i < plan.repeaters.size(); ++i) {
    out << (i ? ";" : "") << plan.repeaters[i];
  }
  out << '\n';
  out << "bus_count=" << plan.buses.size() << '\n';
  out << "uncovered_count=" << plan.uncovered().size() << '\n';
  out << "coverage_percent=" << text::format_double(100.0 * plan.coverage_fraction()) << '\n';
  out << "max_covered_loss_db=" << text::format_double(plan.max_covered_loss_db()) << '\n';
}

}  // namespace plcgrid
