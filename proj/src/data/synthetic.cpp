// SPDX-License-Identifier: Apache-2.0
#include "agc/data/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "agc/errors.hpp"

namespace agc::data {

void validate(const SyntheticParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError(std::string(name) + " must be positive");
    }
  };
  auto non_negative = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError(std::string(name) + " must be non-negative");
    }
  };
  positive(p.free_flow_kmh, "free_flow_kmh");
  positive(p.dip_width_min, "dip_width_min");
  positive(p.floor_kmh, "floor_kmh");
  non_negative(p.dip_depth_kmh, "dip_depth_kmh");
  non_negative(p.noise_sigma_kmh, "noise_sigma_kmh");
  non_negative(p.peak_jitter_min, "peak_jitter_min");
  non_negative(p.incident_rate, "incident_rate");
  non_negative(p.incident_depth_kmh, "incident_depth_kmh");
  if (p.weekend_factor < 0.0 || p.weekend_factor > 1.0) {
    throw ValidationError("weekend_factor must be in [0, 1]");
  }
  if (p.depth_jitter < 0.0 || p.depth_jitter >= 1.0) {
    throw ValidationError("depth_jitter must be in [0, 1)");
  }
  if (p.wave_lag_slots < 0) throw ValidationError("wave_lag_slots must be non-negative");
  if (p.incident_duration_slots <= 0) throw ValidationError("incident_duration_slots must be positive");
  if (p.incident_reach_hops < 0) throw ValidationError("incident_reach_hops must be non-negative");
  if (!parse_date(p.start_date)) throw ValidationError("start_date must be YYYY-MM-DD");
}

std::vector<int> wave_offsets(const graph::RoadGraph& g, int lag_slots) {
  const std::size_t n = g.link_count();
  std::vector<int> out(n, 0);
  if (n == 0) return out;
  const std::size_t head = n - 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (auto d = graph::hop_distance(g, i, head)) out[i] = static_cast<int>(*d) * lag_slots;
  }
  return out;
}

SpeedSeries generate_synthetic(const graph::RoadGraph& g, std::size_t days, std::uint64_t seed,
                               const SyntheticParams& p) {
  validate(p);
  if (g.link_count() == 0) throw ValidationError("graph has no links");
  if (days < 2) throw ValidationError("days must be at least 2");

  TimeGrid grid = TimeGrid::consecutive(*parse_date(p.start_date), days, p.slot_minutes,
                                        p.day_start_minute, p.day_end_minute);
  SpeedSeries series(grid, g.link_ids());
  const std::size_t links = g.link_count();
  const std::size_t slots = grid.slots_per_day();
  const auto offsets = wave_offsets(g, p.wave_lag_slots);
  const auto dist = graph::all_hop_distances(g);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit_normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  struct Day {
    double morning, evening, depth;
  };
  struct Incident {
    std::size_t day, link, slot;
  };
  std::vector<Day> day_params(days);
  std::vector<Incident> incidents;
  std::poisson_distribution<int> incident_count(p.incident_rate > 0.0 ? p.incident_rate : 1.0);
  for (std::size_t d = 0; d < days; ++d) {
    day_params[d].morning = p.morning_peak_min + p.peak_jitter_min * unit_normal(rng);
    day_params[d].evening = p.evening_peak_min + p.peak_jitter_min * unit_normal(rng);
    day_params[d].depth = p.dip_depth_kmh * (1.0 + p.depth_jitter * (2.0 * unit(rng) - 1.0));
    if (grid.is_weekend(d)) day_params[d].depth *= p.weekend_factor;
    if (p.incident_rate > 0.0) {
      const int count = incident_count(rng);
      for (int k = 0; k < count; ++k) {
        const auto link = static_cast<std::size_t>(unit(rng) * static_cast<double>(links)) % links;
        const auto slot = static_cast<std::size_t>(unit(rng) * static_cast<double>(slots)) % slots;
        incidents.push_back({d, link, slot});
      }
    }
  }

  const double w2 = 2.0 * p.dip_width_min * p.dip_width_min;
  for (std::size_t l = 0; l < links; ++l) {
    for (std::size_t d = 0; d < days; ++d) {
      const Day& dp = day_params[d];
      for (std::size_t k = 0; k < slots; ++k) {
        const double minute = grid.minute_of_day(k) - offsets[l] * p.slot_minutes;
        const double am = minute - dp.morning;
        const double pm = minute - dp.evening;
        double v = p.free_flow_kmh - dp.depth * (std::exp(-am * am / w2) + std::exp(-pm * pm / w2));
        for (const Incident& inc : incidents) {
          if (inc.day != d) continue;
          const auto hops = dist[l * links + inc.link];
          if (!hops || static_cast<int>(*hops) > p.incident_reach_hops) continue;
          const std::size_t start = inc.slot + *hops * static_cast<std::size_t>(p.wave_lag_slots);
          if (k >= start && k < start + static_cast<std::size_t>(p.incident_duration_slots)) {
            v -= p.incident_depth_kmh;
          }
        }
        if (p.noise_sigma_kmh > 0.0) v += p.noise_sigma_kmh * unit_normal(rng);
        series.set(l, grid.column(d, k), std::max(v, p.floor_kmh));
      }
    }
  }
  return series;
}

nlohmann::json to_json(const SyntheticParams& p) {
  return {{"free_flow_kmh", p.free_flow_kmh},
          {"dip_depth_kmh", p.dip_depth_kmh},
          {"dip_width_min", p.dip_width_min},
          {"morning_peak_min", p.morning_peak_min},
          {"evening_peak_min", p.evening_peak_min},
          {"weekend_factor", p.weekend_factor},
          {"noise_sigma_kmh", p.noise_sigma_kmh},
          {"floor_kmh", p.floor_kmh},
          {"wave_lag_slots", p.wave_lag_slots},
          {"peak_jitter_min", p.peak_jitter_min},
          {"depth_jitter", p.depth_jitter},
          {"incident_rate", p.incident_rate},
          {"incident_depth_kmh", p.incident_depth_kmh},
          {"incident_duration_slots", p.incident_duration_slots},
          {"incident_reach_hops", p.incident_reach_hops},
          {"start_date", p.start_date},
          {"slot_minutes", p.slot_minutes},
          {"day_start_minute", p.day_start_minute},
          {"day_end_minute", p.day_end_minute}};
}

SyntheticParams synthetic_params_from_json(const nlohmann::json& j) {
  SyntheticParams p;
  p.free_flow_kmh = j.value("free_flow_kmh", p.free_flow_kmh);
  p.dip_depth_kmh = j.value("dip_depth_kmh", p.dip_depth_kmh);
  p.dip_width_min = j.value("dip_width_min", p.dip_width_min);
  p.morning_peak_min = j.value("morning_peak_min", p.morning_peak_min);
  p.evening_peak_min = j.value("evening_peak_min", p.evening_peak_min);
  p.weekend_factor = j.value("weekend_factor", p.weekend_factor);
  p.noise_sigma_kmh = j.value("noise_sigma_kmh", p.noise_sigma_kmh);
  p.floor_kmh = j.value("floor_kmh", p.floor_kmh);
  p.wave_lag_slots = j.value("wave_lag_slots", p.wave_lag_slots);
  p.peak_jitter_min = j.value("peak_jitter_min", p.peak_jitter_min);
  p.depth_jitter = j.value("depth_jitter", p.depth_jitter);
  p.incident_rate = j.value("incident_rate", p.incident_rate);
  p.incident_depth_kmh = j.value("incident_depth_kmh", p.incident_depth_kmh);
  p.incident_duration_slots = j.value("incident_duration_slots", p.incident_duration_slots);
  p.incident_reach_hops = j.value("incident_reach_hops", p.incident_reach_hops);
  p.start_date = j.value("start_date", p.start_date);
  p.slot_minutes = j.value("slot_minutes", p.slot_minutes);
  p.day_start_minute = j.value("day_start_minute", p.day_start_minute);
  p.day_end_minute = j.value("day_end_minute", p.day_end_minute);
  return p;
}

}  // namespace agc::data
