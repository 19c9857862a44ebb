// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "agc/data/csv_io.hpp"
#include "agc/data/synthetic.hpp"
#include "agc/errors.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace agc;
using namespace agc::data;
using namespace std::chrono;

namespace {

TimeGrid grid_of(std::size_t days) { return TimeGrid::consecutive(2016y / October / 1, days); }

SpeedSeries filled(const TimeGrid& g, std::vector<std::string> ids, std::uint64_t seed) {
  SpeedSeries s(g, std::move(ids));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(5.0, 80.0);
  for (std::size_t l = 0; l < s.link_count(); ++l) {
    for (std::size_t c = 0; c < s.columns(); ++c) s.set(l, c, u(rng));
  }
  return s;
}

std::set<std::string> lines_after_header(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::set<std::string> out;
  while (std::getline(in, line)) out.insert(line);
  return out;
}

}  // namespace

TEST_CASE("time grid layout") {
  const auto g = grid_of(3);
  CHECK(g.slots_per_day() == 192);
  CHECK(g.columns() == 576);
  CHECK(g.day_of(200) == 1);
  CHECK(g.slot_of(200) == 8);
  CHECK(g.timestamp(0, 0) == "2016-10-01T06:00");
  CHECK(g.timestamp(2, 191) == "2016-10-03T21:55");
  CHECK(g.is_weekend(0));   // Saturday
  CHECK(g.is_weekend(1));   // Sunday
  CHECK(!g.is_weekend(2));  // Monday
  CHECK(g.weekday_flag(2) == 1.0);
  CHECK(g.weekday_flag(0) == 0.0);
  CHECK(TimeGrid(g.days(), 15).slots_per_day() == 64);
  CHECK_THROWS_AS(TimeGrid(g.days(), 7), ValidationError);
}

TEST_CASE("time of day index") {
  CHECK(time_of_day_index(0) == 1);
  CHECK(time_of_day_index(7 * 60) == 85);
  CHECK(time_of_day_index(6 * 60) == 73);
  CHECK(time_of_day_index(grid_of(1), 0) == 73);
  CHECK(time_of_day_index(grid_of(1), 191) == 264);
}

TEST_CASE("timestamp parsing") {
  const auto t = parse_timestamp("2016-10-01T07:05");
  REQUIRE(t);
  CHECK(t->minute_of_day == 425);
  CHECK(t->date == 2016y / October / 1);
  CHECK(!parse_timestamp("2016-10-01 07:05"));
  CHECK(!parse_timestamp("2016-13-01T07:05"));
  CHECK(!parse_timestamp("2016-10-01T25:00"));
}

TEST_CASE("speed series cells") {
  SpeedSeries s(grid_of(2), {"a", "b"});
  CHECK(s.missing_count() == 768);
  s.set(1, 5, 42.0);
  CHECK(s.observed(1, 5));
  CHECK(s.speed(1, 5) == 42.0);
  CHECK_THROWS_AS(s.set(0, 0, -1.0), ValidationError);
  CHECK_THROWS_AS(s.set(0, 0, NAN), ValidationError);
  s.clear(1, 5);
  CHECK(!s.observed(1, 5));
}

TEST_CASE("synthetic generator basics") {
  const auto g = graph::ring_graph(3);
  SyntheticParams flat;
  flat.noise_sigma_kmh = 0.0;
  flat.dip_depth_kmh = 0.0;
  const auto s = generate_synthetic(g, 2, 1, flat);
  CHECK(s.complete());
  for (std::size_t l = 0; l < 3; ++l) {
    for (double v : s.link_row(l)) CHECK(v == 60.0);
  }
  const auto a = generate_synthetic(g, 3, 99);
  const auto b = generate_synthetic(g, 3, 99);
  CHECK(a == b);
  CHECK(!(a == generate_synthetic(g, 3, 100)));
  for (std::size_t l = 0; l < 3; ++l) {
    for (double v : a.link_row(l)) CHECK(v >= 1.0);
  }
  CHECK_THROWS_AS(generate_synthetic(g, 1, 1), ValidationError);
  SyntheticParams bad;
  bad.free_flow_kmh = 0.0;
  CHECK_THROWS_AS(generate_synthetic(g, 2, 1, bad), ValidationError);
  bad = {};
  bad.dip_width_min = -5.0;
  CHECK_THROWS_AS(generate_synthetic(g, 2, 1, bad), ValidationError);
}

TEST_CASE("wave offsets trail the downstream neighbour") {
  const auto g = graph::ring_graph(5);
  CHECK(wave_offsets(g, 2) == std::vector<int>{8, 6, 4, 2, 0});
}

TEST_CASE("cross-correlation with the upstream neighbour peaks at the wave lag") {
  const auto g = graph::ring_graph(6);
  for (int lag : {1, 2, 3}) {
    SyntheticParams p;
    p.wave_lag_slots = lag;
    const auto s = generate_synthetic(g, 8, 17, p);
    // Link 3 feeds link 4, so 3 is upstream of 4 and repeats its dip `lag` slots later.
    const std::size_t down = 4, up = 3;
    const std::size_t slots = s.grid().slots_per_day();
    int best = -1;
    double best_c = -2.0;
    for (int L = 0; L <= 6; ++L) {
      double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0, n = 0;
      for (std::size_t d = 0; d < s.grid().day_count(); ++d) {
        const auto x = s.day_row(down, d);
        const auto y = s.day_row(up, d);
        for (std::size_t k = 0; k + static_cast<std::size_t>(L) < slots; ++k) {
          const double a = x[k], b = y[k + static_cast<std::size_t>(L)];
          sx += a, sy += b, sxx += a * a, syy += b * b, sxy += a * b, n += 1;
        }
      }
      const double c = (sxy - sx * sy / n) / std::sqrt((sxx - sx * sx / n) * (syy - sy * sy / n));
      if (c > best_c) best_c = c, best = L;
    }
    CHECK(best == lag);
  }
}

TEST_CASE("incidents spread upstream with the wave lag") {
  const auto g = graph::ring_graph(6);
  SyntheticParams p;
  p.noise_sigma_kmh = 0.0;
  p.incident_rate = 3.0;
  const auto with = generate_synthetic(g, 4, 5, p);
  p.incident_rate = 0.0;
  // Same seed draws different day parameters once incidents consume the
  // stream, so only compare shapes: incidents only ever lower speeds.
  const auto base = generate_synthetic(g, 4, 5, p);
  CHECK(with.grid() == base.grid());
  CHECK_FALSE(with == base);
}

TEST_CASE("synthetic parameters round trip through json") {
  SyntheticParams p;
  p.incident_rate = 2.5;
  p.wave_lag_slots = 3;
  p.start_date = "2017-01-02";
  CHECK(synthetic_params_from_json(to_json(p)) == p);
}

TEST_CASE("csv load: tiny file and missing cells") {
  const auto dir = testing::scratch_dir("data-load");
  const auto g = graph::build_graph({"x"}, {});
  std::ofstream(dir / "a.csv") << "timestamp,link_id,speed_kmh\n2016-10-01T06:00,x,10\n2016-10-01T06:05,x,11.5\n";
  const auto grid = TimeGrid(grid_of(1).days(), 5, 360, 370);
  const auto r = load_csv(dir / "a.csv", g, grid);
  CHECK(r.series.columns() == 2);
  CHECK(r.series.complete());
  CHECK(r.series.speed(0, 1) == 11.5);

  std::ofstream(dir / "b.csv") << "timestamp,link_id,speed_kmh\n2016-10-01T06:00,x,10\n";
  const auto r2 = load_csv(dir / "b.csv", g, grid);
  CHECK(r2.series.missing_count() == 1);
  CHECK(!r2.series.observed(0, 1));
}

TEST_CASE("csv load errors and duplicates") {
  const auto dir = testing::scratch_dir("data-errors");
  const auto g = graph::build_graph({"x"}, {});
  const auto grid = grid_of(1);
  std::ofstream(dir / "dup.csv") << "timestamp,link_id,speed_kmh\n2016-10-01T06:00,x,10\n2016-10-01T06:00,x,12\n";
  const auto r = load_csv(dir / "dup.csv", g, grid);
  CHECK(r.duplicate_rows == 1);
  CHECK(r.series.speed(0, 0) == 12.0);

  std::ofstream(dir / "unknown.csv") << "timestamp,link_id,speed_kmh\n2016-10-01T06:00,y,10\n";
  CHECK_THROWS_AS(load_csv(dir / "unknown.csv", g, grid), ReferenceError);

  std::ofstream(dir / "offgrid.csv") << "timestamp,link_id,speed_kmh\n2016-10-01T06:00,x,10\n2016-10-01T06:03,x,10\n";
  try {
    load_csv(dir / "offgrid.csv", g, grid);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
  std::ofstream(dir / "header.csv") << "time,link,speed\n";
  CHECK_THROWS_AS(load_csv(dir / "header.csv", g, grid), FormatError);
}

TEST_CASE("csv write/load round trip") {
  const auto dir = testing::scratch_dir("data-roundtrip");
  const auto g = graph::ring_graph(3);
  auto s = generate_synthetic(g, 2, 3);
  s.clear(1, 17);
  s.clear(2, 300);
  write_csv(s, dir / "s.csv");
  const auto grid = infer_grid(dir / "s.csv");
  CHECK(grid == s.grid());
  const auto back = load_csv(dir / "s.csv", g, grid).series;
  CHECK(back == s);
  write_csv(back, dir / "t.csv");
  CHECK(lines_after_header(dir / "s.csv") == lines_after_header(dir / "t.csv"));
}

TEST_CASE("interpolation: small cases") {
  const auto g3 = TimeGrid(grid_of(1).days(), 5, 360, 375);
  SpeedSeries a(g3, {"x"});
  a.set(0, 0, 10.0);
  a.set(0, 2, 20.0);
  auto fa = interpolate_missing(a);
  CHECK(fa.speed(0, 1) == 15.0);
  CHECK(fa.complete());

  SpeedSeries b(g3, {"x"});
  b.set(0, 1, 10.0);
  b.set(0, 2, 10.0);
  auto fb = interpolate_missing(b);
  CHECK(fb.speed(0, 0) == 10.0);

  SpeedSeries none(g3, {"x"});
  CHECK_THROWS_AS(interpolate_missing(none), ValidationError);
}

TEST_CASE("interpolation: a fully missing day takes the per-slot mean of observed days") {
  const auto g = TimeGrid(grid_of(3).days(), 5, 360, 375);
  SpeedSeries s(g, {"x"});
  for (std::size_t k = 0; k < 3; ++k) {
    s.set(0, g.column(0, k), 10.0 + k);
    s.set(0, g.column(2, k), 20.0 + k);
  }
  const auto f = interpolate_missing(s);
  for (std::size_t k = 0; k < 3; ++k) CHECK(f.speed(0, g.column(1, k)) == 15.0 + k);
}

TEST_CASE("interpolation matches a per-gap linear oracle") {
  const auto grid = grid_of(3);
  auto truth = filled(grid, {"a", "b"}, 21);
  auto holey = truth;
  std::mt19937_64 rng(5);
  std::bernoulli_distribution drop(0.3);
  for (std::size_t l = 0; l < 2; ++l) {
    for (std::size_t c = 0; c < holey.columns(); ++c) {
      if (drop(rng)) holey.clear(l, c);
    }
  }
  const auto fixed = interpolate_missing(holey);
  const std::size_t slots = grid.slots_per_day();
  double worst = 0.0;
  for (std::size_t l = 0; l < 2; ++l) {
    for (std::size_t d = 0; d < grid.day_count(); ++d) {
      std::vector<std::size_t> obs;
      for (std::size_t k = 0; k < slots; ++k) {
        if (holey.observed(l, grid.column(d, k))) obs.push_back(k);
      }
      REQUIRE(!obs.empty());
      for (std::size_t k = 0; k < slots; ++k) {
        double expect;
        if (k <= obs.front()) {
          expect = holey.speed(l, grid.column(d, obs.front()));
        } else if (k >= obs.back()) {
          expect = holey.speed(l, grid.column(d, obs.back()));
        } else {
          std::size_t hi = 0;
          while (obs[hi] < k) ++hi;
          const std::size_t k0 = obs[hi - 1], k1 = obs[hi];
          if (k1 == k) {
            expect = holey.speed(l, grid.column(d, k));
          } else {
            const double v0 = holey.speed(l, grid.column(d, k0)), v1 = holey.speed(l, grid.column(d, k1));
            expect = v0 + (v1 - v0) * static_cast<double>(k - k0) / static_cast<double>(k1 - k0);
          }
        }
        worst = std::max(worst, std::fabs(expect - fixed.speed(l, grid.column(d, k))));
      }
    }
  }
  CHECK(worst < 1e-12);
  CHECK(fixed.complete());
}

TEST_CASE("split is a chronological partition") {
  const auto s = filled(grid_of(10), {"a"}, 1);
  const auto [train, test] = split(s, 7);
  CHECK(train.grid().day_count() == 7);
  CHECK(test.grid().day_count() == 3);
  CHECK(sys_days{test.grid().day(0)} == sys_days{train.grid().day(6)} + days{1});
  CHECK(train.columns() + test.columns() == s.columns());
  for (std::size_t c = 0; c < train.columns(); ++c) CHECK(train.speed(0, c) == s.speed(0, c));
  for (std::size_t c = 0; c < test.columns(); ++c) CHECK(test.speed(0, c) == s.speed(0, train.columns() + c));
  CHECK_THROWS_AS(split(s, 0), ValidationError);
  CHECK_THROWS_AS(split(s, 10), ValidationError);
}

TEST_CASE("series must match the graph") {
  const auto s = filled(grid_of(1), {"L0", "L1"}, 1);
  CHECK_NOTHROW(s.check_graph(graph::ring_graph(2)));
  CHECK_THROWS_AS(s.check_graph(graph::ring_graph(3)), ValidationError);
}
