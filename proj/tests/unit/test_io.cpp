#include <cmath>
#include <string>

#include "aeris/error.hpp"
#include "aeris/io.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace aeris;

TEST_CASE("scene round trip") {
  CityParams p;
  const Scene s = gen_city(p, 5);
  CHECK(scene_from_json(scene_to_json(s)) == s);
  CHECK_THROWS_AS(scene_from_json("{\"bounds\": 3}"), InvalidArgument);
}

TEST_CASE("trajectories round trip") {
  const std::vector<Trajectory4D> t{fixtures::line(1, {0.1, 0.2, 50.3}, {100, 1.0 / 3.0, 60}, 0, 10),
                                    fixtures::hover(2, {5, 5, 90}, 30)};
  const auto back = trajectories_from_json(trajectories_to_json(t));
  REQUIRE(back.size() == 2);
  CHECK(back[0].waypoints[1].pos.y == 1.0 / 3.0);
  CHECK(back[1].aircraft_id == 2);
}

TEST_CASE("config round trip and unknown keys") {
  ScenarioConfig c;
  c.traffic.load_per_min = 16;
  c.city.terminal_band = 0.15;
  c.budget.p_max_dbm = 27.5;
  c.deviation.sigma_dev = 1.0 / 7.0;
  const auto back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  CHECK(back.deviation.sigma_dev == 1.0 / 7.0);
  CHECK(back.traffic.load_per_min == 16);

  try {
    config_from_json("{\"traffic\": {\"lod_per_min\": 3}}");
    FAIL("expected ConfigInvalid");
  } catch (const ConfigInvalid& e) {
    CHECK(std::string(e.what()).find("traffic.lod_per_min") != std::string::npos);
  }
  CHECK_THROWS_AS(config_from_json("not json"), ConfigInvalid);
  CHECK_THROWS_AS(config_from_json("{\"budget\": {\"outage_eps\": \"x\"}}"), ConfigInvalid);
  // Missing keys keep their defaults.
  CHECK(config_from_json("{}").traffic.load_per_min == ScenarioConfig{}.traffic.load_per_min);
}

TEST_CASE("scenario with explicit scene and routes round trips") {
  ScenarioConfig c;
  c.aircraft.count = 3;
  const auto g = gen_scenario(c);
  REQUIRE(g.scene.has_value());
  REQUIRE(g.trajectories.has_value());
  CHECK(g.trajectories->size() == 3);
  const auto back = config_from_json(config_to_json(g));
  CHECK(*back.scene == *g.scene);
  CHECK(back.trajectories->size() == 3);
}

TEST_CASE("samples csv round trip") {
  const std::vector<ChannelSample> s{{{1, 2, 3}, {4, 5, 6}, -80.123456789012345, true},
                                     {{7, 8, 9}, {1, 1, 1}, -99.5, false}};
  const auto back = samples_from_csv(samples_to_csv(s));
  REQUIRE(back.size() == 2);
  CHECK(back[0].gain_db == s[0].gain_db);
  CHECK(back[0].los);
  CHECK_FALSE(back[1].los);
  // The los column is optional.
  const auto bare = samples_from_csv("tx_x,tx_y,tx_z,rx_x,rx_y,rx_z,gain_db\n0,0,1,5,5,1,-70\n");
  REQUIRE(bare.size() == 1);
  CHECK(bare[0].gain_db == -70.0);
  CHECK_THROWS(samples_from_csv("tx_x\n1,2\n"));
}

TEST_CASE("graph dump lists in-range pairs") {
  const std::vector<Trajectory4D> trajs{fixtures::hover(1, {0, 0, 50}, 10)};
  const std::vector<GroundNode> ground{{5, {10, 0, 1}}, {6, {900, 900, 1}}};
  const RadioMap map = build_map({{{0, 0, 50}, {10, 0, 1}, -70.0, true}});
  const auto g = synthesize(trajs, ground, map, {0.0, 1.0, 3}, 100.0);
  const std::string csv = graph_to_csv(g);
  CHECK(csv == "t,i,j,gain_db\n0,1,5,-70\n1,1,5,-70\n2,1,5,-70\n");
}

TEST_CASE("policy and reservation formats") {
  LinkBudget b;
  const auto pol = build_policy({-90.0, 0.0, 0.0}, b, 4);
  const std::string csv = policy_to_csv(pol);
  CHECK(csv.rfind("bin_low_db,bin_high_db,power_dbm\n", 0) == 0);

  PathReservation r;
  r.injection_slot = 3;
  r.delivery_slot = 9;
  r.predicted_cost = 1.25e-9;
  r.hops = {{1, 2, {3, 5}, 4, 12.5, false}, {2, 3, {6, 8}, 8, 7.0, true}};
  CHECK(reservation_from_json(reservation_to_json(r)) == r);
}

TEST_CASE("sweep csv round trip") {
  SweepRow a;
  a.load = 4;
  a.method = Method::kBaselineSpacetime;
  a.seed = 7;
  a.metrics.interference_mw_s = 3.5e-8;
  a.metrics.interference_db = 10 * std::log10(3.5e-8);
  a.metrics.delivery_rate = 0.75;
  a.metrics.mean_delay_s = 4.2;
  a.metrics.energy_mj = 12.0;
  SweepRow z = a;
  z.metrics.interference_mw_s = 0;
  z.metrics.interference_db = -INFINITY;
  const std::vector<SweepRow> rows{a, z};
  const std::string csv = sweep_to_csv(rows);
  CHECK(csv.rfind("load,method,seed,interference_mw_s,interference_db,delivery_rate,mean_delay_s,energy_mj\n", 0) == 0);
  const auto back = sweep_from_csv(csv);
  REQUIRE(back.size() == 2);
  CHECK(back[0].method == Method::kBaselineSpacetime);
  CHECK(back[0].metrics.interference_mw_s == a.metrics.interference_mw_s);
  CHECK(back[0].metrics.interference_db == a.metrics.interference_db);
  CHECK(std::isinf(back[1].metrics.interference_db));
  CHECK(sweep_to_csv(back) == csv);
}

TEST_CASE("quantiles interpolate linearly") {
  CHECK(quantile({3, 1, 2, 4}, 0.5) == 2.5);
  CHECK(quantile({3, 1, 2, 4}, 0.25) == 1.75);
  CHECK(quantile({5}, 0.75) == 5);
  CHECK(quantile({-INFINITY, -INFINITY, 1}, 0.25) == -INFINITY);
  CHECK_THROWS(quantile({}, 0.5));
}

TEST_CASE("plot data groups by load and method") {
  std::vector<SweepRow> rows;
  for (int s = 1; s <= 5; ++s) {
    for (Method m : {Method::kPredictive, Method::kBaselineAggregate}) {
      SweepRow r;
      r.load = 2;
      r.method = m;
      r.seed = s;
      r.metrics.interference_db = (m == Method::kPredictive ? -80.0 : -70.0) + s;
      r.metrics.interference_mw_s = std::pow(10.0, r.metrics.interference_db / 10);
      r.metrics.delivery_rate = 0.1 * s;
      rows.push_back(r);
    }
  }
  const auto p = plot_data(rows);
  REQUIRE(p.size() == 2);
  CHECK(p[0].method == Method::kPredictive);
  CHECK(p[0].n == 5);
  CHECK(p[0].median_db == -77.0);
  CHECK(p[0].q25_db == -78.0);
  CHECK(p[0].q75_db == -76.0);
  CHECK(p[1].median_db == -67.0);
  CHECK(p[0].median_delivery_rate == doctest::Approx(0.3));
  const auto csv = plot_data_to_csv(p);
  CHECK(csv.rfind("load,method,n,median_interference_db,q25_interference_db,q75_interference_db,iqr_db,median_delivery_rate\n", 0) == 0);
}
