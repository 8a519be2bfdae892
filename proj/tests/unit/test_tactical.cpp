#include <cmath>
#include <limits>
#include <map>

#include "aeris/error.hpp"
#include "aeris/tactical.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aeris;

TEST_CASE("schedule_timing equals exhaustive enumeration") {
  int feasible = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const auto in = oracles::random_timing(seed);
    const auto oracle = oracles::brute_force_timing(in);
    if (!oracle) {
      CHECK_THROWS_AS(schedule_timing(in.route, in.forecast(), in.deadline_slot, in.budget),
                      InfeasibleSchedule);
      continue;
    }
    ++feasible;
    const Schedule s = schedule_timing(in.route, in.forecast(), in.deadline_slot, in.budget);
    CHECK(s.slots == oracle->slots);
    CHECK(s.total_gain_db == doctest::Approx(oracle->total).epsilon(1e-12));
    CHECK(check_schedule(s, in.route, in.deadline_slot) == "");
  }
  CHECK(feasible > 50);
}

TEST_CASE("flat forecast takes the earliest slots") {
  const std::vector<TimedHop> route{{1, 2, {2, 6}}, {2, 3, {4, 9}}, {3, 4, {4, 12}}};
  SlotForecastFn flat = [](NodeId, NodeId, int) { return -80.0; };
  const Schedule s = schedule_timing(route, flat, 20, LinkBudget{});
  CHECK(s.slots == std::vector<int>{2, 4, 5});
  CHECK(s.route == std::vector<NodeId>{1, 2, 3, 4});
  CHECK(s.total_gain_db == -240.0);
}

TEST_CASE("timing rejects broken routes and impossible windows") {
  SlotForecastFn flat = [](NodeId, NodeId, int) { return -80.0; };
  CHECK_THROWS_AS(schedule_timing({{1, 2, {0, 3}}, {3, 4, {4, 6}}}, flat, 10, LinkBudget{}),
                  InvalidArgument);
  CHECK_THROWS_AS(schedule_timing({{1, 2, {3, 3}}, {2, 3, {0, 3}}}, flat, 10, LinkBudget{}),
                  InfeasibleSchedule);
  CHECK_THROWS_AS(schedule_timing({{1, 2, {5, 8}}}, flat, 4, LinkBudget{}), InfeasibleSchedule);
  CHECK(schedule_timing({}, flat, 4, LinkBudget{}).slots.empty());
}

TEST_CASE("blockage threshold is strict") {
  const TimedHop hop{1, 2, {0, 3}};
  SlotForecastFn at = [](NodeId, NodeId, int t) { return t == 2 ? -100.0 : -120.0; };
  CHECK_FALSE(detect_blockage(at, hop, -100.0));
  CHECK(detect_blockage(at, hop, -99.999));
  SlotForecastFn none = [](NodeId, NodeId, int) { return std::numeric_limits<double>::quiet_NaN(); };
  CHECK(detect_blockage(none, hop, -100.0));
}

using oracles::Fig4c;

namespace {

InterferenceFn flat_interference() { return oracles::power_interference(); }

}  // namespace

TEST_CASE("blocked hop is replaced through a cluster relay") {
  Fig4c f;
  const Detour d = reroute_local(f.cluster, f.directive, 0, f.forecast(), flat_interference(), f.budget);
  REQUIRE(d.hops.size() == 2);
  CHECK(d.hops[0].tx == 2);
  CHECK(d.hops[0].rx == 5);
  CHECK(d.hops[1].tx == 5);
  CHECK(d.hops[1].rx == 7);
  CHECK(d.first_replaced == 0);
  CHECK(d.replaced_count == 2);
  // Both replacement hops share the replaced span; timing orders them.
  const Schedule s = schedule_timing(d.hops, f.forecast(), 9, f.budget);
  CHECK(s.slots == std::vector<int>{0, 1});
  CHECK(d.added_interference > 0.0);
}

TEST_CASE("a feasible direct link beats a relay of equal cost") {
  Fig4c f;
  f.gains.clear();
  const Detour d = reroute_local(f.cluster, f.directive, 0, f.forecast(), flat_interference(), f.budget);
  REQUIRE(d.hops.size() == 1);
  CHECK(d.hops[0].tx == 2);
  CHECK(d.hops[0].rx == 7);
}

TEST_CASE("the detour minimizes predicted interference") {
  Fig4c f;
  f.cluster.members = {2, 5, 6, 7, 8};
  f.gains[{2, 5}] = -95.0;
  // Relay 8 links are stronger, so less power and less interference.
  f.gains[{2, 8}] = -70.0;
  f.gains[{7, 8}] = -70.0;
  const Detour d = reroute_local(f.cluster, f.directive, 0, f.forecast(), flat_interference(), f.budget);
  REQUIRE(d.hops.size() == 2);
  CHECK(d.hops[0].rx == 8);
  const double via5 = std::pow(10.0, required_power_dbm(-95.0, f.budget) / 10.0) +
                      std::pow(10.0, required_power_dbm(-80.0, f.budget) / 10.0);
  CHECK(d.added_interference < via5);
}

TEST_CASE("no detour escalates, an unblocked hop passes through") {
  Fig4c f;
  const double bad = min_feasible_gain_db(f.budget) - 1.0;
  f.gains[{2, 5}] = bad;
  CHECK_THROWS_AS(reroute_local(f.cluster, f.directive, 0, f.forecast(), flat_interference(), f.budget),
                  EscalateToStrategic);
  const Detour same = reroute_local(f.cluster, f.directive, 1, f.forecast(), flat_interference(), f.budget);
  CHECK(same.hops == std::vector<TimedHop>{f.directive[1]});
  CHECK_THROWS_AS(reroute_local(f.cluster, f.directive, 5, f.forecast(), flat_interference(), f.budget),
                  OutOfRange);
  LocalCluster bad_cluster;
  bad_cluster.members = {1};
  bad_cluster.block(1, 9);
  CHECK_THROWS_AS(bad_cluster.validate(), InvalidArgument);
}

TEST_CASE("timed hops follow the reservation") {
  PathReservation r;
  r.hops = {{1, 2, {0, 3}, 1, 0.0, false}, {2, 3, {4, 6}, 5, 0.0, true}};
  const auto h = timed_hops(r);
  REQUIRE(h.size() == 2);
  CHECK(h[1] == TimedHop{2, 3, {4, 6}});
}
