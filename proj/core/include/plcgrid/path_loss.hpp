// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string_view>

namespace plcgrid {

enum class SegmentClass { lv, mv_overhead, mv_underground, hv_overhead };

std::string_view to_string(SegmentClass c);
/// Accepts LV, MV_overhead, MV_underground, HV_overhead.
std::optional<SegmentClass> parse_segment_class(std::string_view s);

/// Loss range in dB/km.
struct LossRange {
  double low = 0.0;
  double high = 0.0;
  double midpoint() const noexcept { return 0.5 * (low + high); }
};

struct PathLossRow {
  LossRange at_100khz;
  LossRange at_10mhz;
};

enum class LossSelector { optimistic, midpoint, pessimistic };

/// Per-class path loss anchored at 100 kHz and 10 MHz.
class PathLossTable {
 public:
  /// Typical PLC values, dB/km:
  ///   LV 1.5-3 / 160-200, MV overhead 0.5-1 / 30-50,
  ///   MV underground 1-2 / 50-80, HV overhead 0.01-0.09 / 2-4.
  static PathLossTable typical();

  /// Throws ModelError unless all losses are positive and each bound grows
  /// from 100 kHz to 10 MHz.
  void set(SegmentClass c, PathLossRow row);
  /// Throws ModelError for a class without a row.
  const PathLossRow& row(SegmentClass c) const;
  bool contains(SegmentClass c) const { return rows_.count(c) != 0; }

 private:
  std::map<SegmentClass, PathLossRow> rows_;
};

inline constexpr double kLowAnchorHz = 100e3;
inline constexpr double kHighAnchorHz = 10e6;

/// dB/km at `freq_hz`: the selected point of each anchor's range, linear in
/// log10(f) between the anchors and clamped outside them.
double pathloss_db_per_km(const PathLossTable& table, SegmentClass c, double freq_hz,
                          LossSelector selector = LossSelector::midpoint);

/// Throws ModelError unless freq > 0 and distance >= 0.
double pathloss_db(const PathLossTable& table, SegmentClass c, double freq_hz,
                   double distance_km, LossSelector selector = LossSelector::midpoint);

}  // namespace plcgrid
