// SPDX-License-Identifier: Apache-2.0
#include "agc/data/speed_series.hpp"

#include <cmath>

#include "agc/errors.hpp"

namespace agc::data {

SpeedSeries::SpeedSeries(TimeGrid grid, std::vector<std::string> link_ids)
    : grid_(std::move(grid)),
      link_ids_(std::move(link_ids)),
      values_(link_ids_.size() * grid_.columns(), 0.0),
      observed_(link_ids_.size() * grid_.columns(), 0) {}

void SpeedSeries::set(std::size_t link, std::size_t col, double kmh) {
  if (!std::isfinite(kmh) || kmh < 0.0) {
    throw ValidationError("speed must be finite and non-negative, got " + std::to_string(kmh));
  }
  values_[link * columns() + col] = kmh;
  observed_[link * columns() + col] = 1;
}

void SpeedSeries::clear(std::size_t link, std::size_t col) {
  values_[link * columns() + col] = 0.0;
  observed_[link * columns() + col] = 0;
}

std::size_t SpeedSeries::missing_count() const {
  std::size_t n = 0;
  for (auto o : observed_) n += o == 0;
  return n;
}

SpeedSeries SpeedSeries::day_range(std::size_t first, std::size_t count) const {
  SpeedSeries out(grid_.sub_grid(first, count), link_ids_);
  const std::size_t s = grid_.slots_per_day();
  for (std::size_t l = 0; l < link_count(); ++l) {
    for (std::size_t c = 0; c < count * s; ++c) {
      const std::size_t src = l * columns() + first * s + c;
      out.values_[l * out.columns() + c] = values_[src];
      out.observed_[l * out.columns() + c] = observed_[src];
    }
  }
  return out;
}

void SpeedSeries::check_graph(const graph::RoadGraph& g) const {
  if (g.link_ids() != link_ids_) {
    throw ValidationError("speed series link ordering does not match the road graph (" +
                          std::to_string(link_ids_.size()) + " vs " +
                          std::to_string(g.link_count()) + " links)");
  }
}

SpeedSeries interpolate_missing(const SpeedSeries& s) {
  const TimeGrid& grid = s.grid();
  const std::size_t slots = grid.slots_per_day();
  SpeedSeries out = s;

  for (std::size_t l = 0; l < s.link_count(); ++l) {
    // Per-slot mean over observed days; fallback for days with no data.
    std::vector<double> slot_sum(slots, 0.0);
    std::vector<std::size_t> slot_n(slots, 0);
    double all_sum = 0.0;
    std::size_t all_n = 0;
    for (std::size_t c = 0; c < s.columns(); ++c) {
      if (!s.observed(l, c)) continue;
      slot_sum[grid.slot_of(c)] += s.speed(l, c);
      ++slot_n[grid.slot_of(c)];
      all_sum += s.speed(l, c);
      ++all_n;
    }
    if (all_n == 0) {
      throw ValidationError("link '" + s.link_ids()[l] + "' has no observed speeds");
    }

    for (std::size_t d = 0; d < grid.day_count(); ++d) {
      std::vector<std::size_t> seen;
      for (std::size_t k = 0; k < slots; ++k) {
        if (s.observed(l, grid.column(d, k))) seen.push_back(k);
      }
      if (seen.empty()) {
        for (std::size_t k = 0; k < slots; ++k) {
          const double fill = slot_n[k] ? slot_sum[k] / static_cast<double>(slot_n[k])
                                        : all_sum / static_cast<double>(all_n);
          out.set(l, grid.column(d, k), fill);
        }
        continue;
      }
      const double first = s.speed(l, grid.column(d, seen.front()));
      const double last = s.speed(l, grid.column(d, seen.back()));
      for (std::size_t k = 0; k < seen.front(); ++k) out.set(l, grid.column(d, k), first);
      for (std::size_t k = seen.back() + 1; k < slots; ++k) out.set(l, grid.column(d, k), last);
      for (std::size_t g = 0; g + 1 < seen.size(); ++g) {
        const std::size_t a = seen[g];
        const std::size_t b = seen[g + 1];
        const double va = s.speed(l, grid.column(d, a));
        const double vb = s.speed(l, grid.column(d, b));
        for (std::size_t k = a + 1; k < b; ++k) {
          const double frac = static_cast<double>(k - a) / static_cast<double>(b - a);
          out.set(l, grid.column(d, k), va + (vb - va) * frac);
        }
      }
    }
  }
  return out;
}

std::pair<SpeedSeries, SpeedSeries> split(const SpeedSeries& s, std::size_t train_days) {
  const std::size_t total = s.grid().day_count();
  if (train_days < 1 || train_days >= total) {
    throw ValidationError("train_days must be in [1, " + std::to_string(total) + "), got " +
                          std::to_string(train_days));
  }
  return {s.day_range(0, train_days), s.day_range(train_days, total - train_days)};
}

}  // namespace agc::data
