// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/path_loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "plcgrid/errors.hpp"

namespace plcgrid {

std::string_view to_string(SegmentClass c) {
  switch (c) {
    case SegmentClass::lv: return "LV";
    case SegmentClass::mv_overhead: return "MV_overhead";
    case SegmentClass::mv_underground: return "MV_underground";
    case SegmentClass::hv_overhead: return "HV_overhead";
  }
  return "LV";
}

std::optional<SegmentClass> parse_segment_class(std::string_view s) {
  if (s == "LV") return SegmentClass::lv;
  if (s == "MV_overhead") return SegmentClass::mv_overhead;
  if (s == "MV_underground") return SegmentClass::mv_underground;
  if (s == "HV_overhead") return SegmentClass::hv_overhead;
  return std::nullopt;
}

PathLossTable PathLossTable::typical() {
  PathLossTable t;
  t.set(SegmentClass::lv, {{1.5, 3.0}, {160.0, 200.0}});
  t.set(SegmentClass::mv_overhead, {{0.5, 1.0}, {30.0, 50.0}});
  t.set(SegmentClass::mv_underground, {{1.0, 2.0}, {50.0, 80.0}});
  t.set(SegmentClass::hv_overhead, {{0.01, 0.09}, {2.0, 4.0}});
  return t;
}

void PathLossTable::set(SegmentClass c, PathLossRow row) {
  const auto ok = [](const LossRange& r) { return r.low > 0.0 && r.high >= r.low; };
  if (!ok(row.at_100khz) || !ok(row.at_10mhz)) {
    throw ModelError("path loss ranges must be positive with low <= high");
  }
  if (!(row.at_10mhz.low > row.at_100khz.low) || !(row.at_10mhz.high > row.at_100khz.high)) {
    throw ModelError("path loss at 10 MHz must exceed the loss at 100 kHz");
  }
  rows_[c] = row;
}

const PathLossRow& PathLossTable::row(SegmentClass c) const {
  const auto it = rows_.find(c);
  if (it == rows_.end()) {
    throw ModelError("no path loss row for class " + std::string(to_string(c)));
  }
  return it->second;
}

namespace {
double pick(const LossRange& r, LossSelector s) {
  switch (s) {
    case LossSelector::optimistic: return r.low;
    case LossSelector::pessimistic: return r.high;
    case LossSelector::midpoint: break;
  }
  return r.midpoint();
}
}  // namespace

double pathloss_db_per_km(const PathLossTable& table, SegmentClass c, double freq_hz,
                          LossSelector selector) {
  if (!(freq_hz > 0.0)) throw ModelError("frequency must be positive");
  const auto& row = table.row(c);
  const double lo = pick(row.at_100khz, selector);
  const double hi = pick(row.at_10mhz, selector);
  const double t = std::clamp(
      (std::log10(freq_hz) - std::log10(kLowAnchorHz)) /
          (std::log10(kHighAnchorHz) - std::log10(kLowAnchorHz)),
      0.0, 1.0);
  return lo + t * (hi - lo);
}

double pathloss_db(const PathLossTable& table, SegmentClass c, double freq_hz,
                   double distance_km, LossSelector selector) {
  if (!(distance_km >= 0.0)) throw ModelError("distance must be non-negative");
  return pathloss_db_per_km(table, c, freq_hz, selector) * distance_km;
}

}  // namespace plcgrid
