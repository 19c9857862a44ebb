// SPDX-License-Identifier: Apache-2.0
#include "agc/features/samples.hpp"

#include <algorithm>

#include "agc/errors.hpp"

namespace agc::features {

std::vector<double> Sample::own_window() const {
  std::vector<double> out(steps());
  for (std::size_t s = 0; s < steps(); ++s) out[s] = own_speed(s);
  return out;
}

std::size_t anchors_per_day(std::size_t slots_per_day, const SampleSpec& spec) {
  if (slots_per_day < spec.lookback + 1 + spec.horizon) return 0;
  return slots_per_day - spec.lookback - spec.horizon;
}

std::vector<Sample> build_samples(const data::SpeedSeries& s, const HistoricalStats& stats,
                                  const graph::HopMask& mask, const SampleSpec& spec) {
  const auto& grid = s.grid();
  const std::size_t slots = grid.slots_per_day();
  if (spec.horizon == 0) throw ValidationError("horizon must be at least 1");
  if (slots < spec.lookback + 1 + spec.horizon) {
    throw ValidationError("horizon too long: " + std::to_string(spec.lookback + 1) +
                          "-step window plus " + std::to_string(spec.horizon) +
                          " targets exceeds the " + std::to_string(slots) + "-slot day");
  }
  if (!s.complete()) throw ValidationError("sample building needs a gap-free series");
  if (mask.link_count() != s.link_count() || stats.link_count() != s.link_count()) {
    throw ValidationError("mask, stats and series disagree on link count");
  }
  if (stats.slots_per_day() != slots) throw ValidationError("stats and series use different day windows");

  const std::size_t per_day = anchors_per_day(slots, spec);
  std::vector<Sample> out;
  out.reserve(s.link_count() * grid.day_count() * per_day);

  for (std::size_t l = 0; l < s.link_count(); ++l) {
    const auto& nbrs = mask.neighbors(l);
    const auto self = static_cast<std::size_t>(std::find(nbrs.begin(), nbrs.end(), l) - nbrs.begin());
    for (std::size_t d = 0; d < grid.day_count(); ++d) {
      const double p = grid.weekday_flag(d);
      for (std::size_t t = spec.lookback; t + spec.horizon < slots; ++t) {
        Sample smp;
        smp.link = l;
        smp.day = d;
        smp.anchor_slot = t;
        smp.neighbors = nbrs;
        smp.self_position = self;
        smp.encoder_speeds.reserve((spec.lookback + 1) * nbrs.size());
        for (std::size_t k = t - spec.lookback; k <= t; ++k) {
          for (std::size_t j : nbrs) smp.encoder_speeds.push_back(s.speed(j, grid.column(d, k)));
          smp.encoder_exog.push_back({static_cast<double>(data::time_of_day_index(grid, k)), p});
        }
        for (std::size_t h = 1; h <= spec.horizon; ++h) {
          const std::size_t k = t + h;
          const auto& st = stats.at(l, k);
          smp.decoder_exog.push_back({static_cast<double>(data::time_of_day_index(grid, k)), st.average,
                                      st.median, st.max, st.min, st.std});
          smp.targets.push_back(s.speed(l, grid.column(d, k)));
        }
        out.push_back(std::move(smp));
      }
    }
  }
  return out;
}

}  // namespace agc::features
