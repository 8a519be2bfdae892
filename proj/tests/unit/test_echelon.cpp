#include <cmath>

#include "aeris/echelon.hpp"
#include "aeris/error.hpp"
#include "aeris/harness.hpp"
#include "doctest.h"

using namespace aeris;

namespace {

const World& small_world() {
  static const World w = [] {
    ScenarioConfig c;
    c.aircraft.count = 6;
    c.grid.n_slots = 600;
    return build_world(c, 3);
  }();
  return w;
}

WorldView view_of(const World& w, double now) {
  return WorldView(*w.truth, w.plans, w.flown, w.ground, w.config.deviation, now);
}

std::vector<EchelonView> tiers(const World& w) {
  const auto& h = w.config.horizons;
  return {EchelonView::central(w.central_map, h.central_staleness_s, h.central_s),
          EchelonView::local(w.local_map, 0.0, h.local_s, {0, 0, 0}, 500.0),
          EchelonView::individual(w.local_map, w.plans.front().aircraft_id, h.individual_s,
                                  h.individual_memory_s)};
}

}  // namespace

TEST_CASE("forecast error shrinks down the hierarchy") {
  const World& w = small_world();
  const auto views = tiers(w);
  const std::vector<double> leads{0.0, 1.0, 10.0};
  const auto r = error_report(views, view_of(w, 0.0), leads, 400, 9);
  REQUIRE(r.rmse_db.size() == 3);
  CHECK(r.rmse_db[0][0] >= r.rmse_db[0][1]);
  CHECK(r.rmse_db[0][1] >= r.rmse_db[0][2]);
  CHECK(r.rmse_db[0][2] == 0.0);
  // Beyond the individual horizon.
  CHECK(std::isnan(r.rmse_db[2][2]));
  CHECK(r.squared_errors[0][2].size() == r.squared_errors[0][0].size());
  for (double e : r.squared_errors[0][2]) CHECK(e == 0.0);
  const std::string csv = r.to_csv();
  CHECK(csv.rfind("tier,lead_time_s,rmse_db\n", 0) == 0);
}

TEST_CASE("individual view measures its own link at lead zero") {
  const World& w = small_world();
  const auto views = tiers(w);
  const WorldView wv = view_of(w, 12.3);
  const NodeId a = w.plans[0].aircraft_id;
  const NodeId b = w.plans[1].aircraft_id;
  const auto f = forecast_gain(views[2], wv, a, b, 12.3);
  CHECK(f.mean_db == wv.true_gain_db(a, b, 12.3));
  CHECK(f.std_db == 0.0);
  CHECK_THROWS_AS(forecast_gain(views[2], wv, b, w.plans[2].aircraft_id, 12.3), OutOfRegion);
  CHECK_THROWS_AS(forecast_gain(views[2], wv, a, b, 12.3 + 5.0), OutOfRange);
  CHECK_THROWS_AS(forecast_gain(views[0], wv, a, b, 12.0), OutOfRange);
}

TEST_CASE("local view only sees its region") {
  const World& w = small_world();
  const WorldView wv = view_of(w, 5.0);
  const NodeId a = w.plans[0].aircraft_id;
  const Position3 pa = wv.realized_position(a, 5.0);
  const auto tight = EchelonView::local(w.local_map, 0.0, 30.0, pa, 1.0);
  NodeId far = 0;
  for (const auto& g : w.ground)
    if (distance(g.pos, pa) > 10.0) far = g.id;
  REQUIRE(far != 0);
  CHECK_THROWS_AS(forecast_gain(tight, wv, a, far, 6.0), OutOfRegion);
  const auto wide = EchelonView::local(w.local_map, 0.0, 30.0, pa, 1e6);
  const auto f = forecast_gain(wide, wv, a, far, 5.0);
  CHECK(f.std_db == w.local_map.residual_std_db());
}

TEST_CASE("central view forecasts from plans") {
  const World& w = small_world();
  const auto views = tiers(w);
  const WorldView wv = view_of(w, 0.0);
  const NodeId a = w.plans[0].aircraft_id;
  const NodeId g = w.terminals.front().id;
  const auto f = forecast_gain(views[0], wv, a, g, 20.0);
  CHECK(f.mean_db == w.central_map.query(wv.planned_position(a, 20.0), wv.planned_position(g, 20.0)).mean_gain_db);
  CHECK(f.std_db >= w.central_map.residual_std_db());
  CHECK(views[0].trajectory_source() == TrajectorySource::kPlanned);
  CHECK(views[2].measurement_access() == MeasurementAccess::kOwnLinksInstantaneous);
}

TEST_CASE("horizon and view validation") {
  CHECK_NOTHROW(validate_horizons(600, 30, 2));
  CHECK_THROWS_AS(validate_horizons(30, 30, 2), InvalidArgument);
  CHECK_THROWS_AS(validate_horizons(600, 30, 0), InvalidArgument);
  EchelonView v;
  v.tier = Tier::kLocal;
  CHECK_THROWS_AS(v.validate(), InvalidArgument);
  v.tier = Tier::kIndividual;
  CHECK_THROWS_AS(v.validate(), InvalidArgument);
  CHECK(std::string(tier_name(Tier::kLocal)) == "local");
}
