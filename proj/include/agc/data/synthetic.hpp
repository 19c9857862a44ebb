// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "agc/data/speed_series.hpp"
#include "agc/graph/road_graph.hpp"
#include "json.hpp"

namespace agc::data {

/// Knobs of the synthetic traffic generator. Each link follows free-flow
/// speed minus a morning and an evening Gaussian dip. Dip timing and depth
/// jitter from day to day but are shared network-wide, and a link's dips
/// trail its downstream neighbour's by `wave_lag_slots` per hop, so
/// congestion travels upstream against the driving direction.
struct SyntheticParams {
  double free_flow_kmh = 60.0;
  double dip_depth_kmh = 35.0;
  double dip_width_min = 60.0;  // Gaussian standard deviation
  double morning_peak_min = 8 * 60.0;
  double evening_peak_min = 18 * 60.0;
  double weekend_factor = 0.4;  // dip attenuation on Saturdays and Sundays
  double noise_sigma_kmh = 2.0;
  double floor_kmh = 1.0;
  int wave_lag_slots = 1;
  double peak_jitter_min = 30.0;  // per-day standard deviation of dip centres
  double depth_jitter = 0.3;      // per-day depth multiplier drawn from 1 +/- this
  /// Sudden drops: expected count per day (Poisson), each hitting a random
  /// link at a random slot and spreading upstream with the wave lag.
  double incident_rate = 0.0;
  double incident_depth_kmh = 25.0;
  int incident_duration_slots = 6;
  int incident_reach_hops = 3;
  std::string start_date = "2016-10-01";
  int slot_minutes = 5;
  int day_start_minute = 6 * 60;
  int day_end_minute = 22 * 60;

  friend bool operator==(const SyntheticParams&, const SyntheticParams&) = default;
};

/// Throws ValidationError on out-of-range parameters.
void validate(const SyntheticParams& p);

/// Deterministic for a given (graph, days, seed, params). Requires a
/// nonempty graph and days >= 2.
SpeedSeries generate_synthetic(const graph::RoadGraph& g, std::size_t days, std::uint64_t seed,
                               const SyntheticParams& params = {});

/// Per-link lag in slots relative to the wave head (the last link): hop
/// distance to the head times the per-hop lag, 0 when the head is unreachable.
std::vector<int> wave_offsets(const graph::RoadGraph& g, int lag_slots);

nlohmann::json to_json(const SyntheticParams& p);
SyntheticParams synthetic_params_from_json(const nlohmann::json& j);

}  // namespace agc::data
