#include <cmath>

#include "aeris/error.hpp"
#include "aeris/strategic.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace aeris;

namespace {

ReserveOptions options_for(const oracles::StrategicInstance& in, PlanObjective obj) {
  ReserveOptions o;
  o.injection_slot = in.injection_slot;
  o.objective = obj;
  o.occupancy = in.use_occupancy ? &in.occupancy : nullptr;
  return o;
}

}  // namespace

TEST_CASE("hop interference equals a direct sum over slots and receivers") {
  const GroundTruthChannel ch(fixtures::open_scene(), PathLossParams{}, 2);
  const std::vector<Trajectory4D> trajs{fixtures::line(1, {0, 0, 80}, {400, 0, 80}, 0, 10)};
  const std::vector<GroundNode> sens{{7, {100, 50, 1.5}}, {8, {300, -50, 1.5}}};
  const SlotGrid grid{0.0, 0.5, 20};
  const RadioMap map = oracles::perfect_map(trajs, {}, sens, ch, grid);
  std::vector<Position3> pos;
  for (int t = 0; t < grid.n_slots; ++t) pos.push_back(position_at(trajs[0], grid.time(t)));
  const auto c = hop_interference(map, pos, 10.0, {3, 9}, sens, grid.dt);
  double expect = 0;
  for (int t = 3; t <= 9; ++t)
    for (const auto& g : sens) expect += 10.0 * std::pow(10.0, ch.gain_db(pos[t], g.pos) / 10.0) * 0.5;
  CHECK(fixtures::rel_err(c.value, expect) < 1e-12);
  CHECK_THROWS_AS(hop_interference(map, pos, 10.0, {3, 20}, sens, grid.dt), OutOfRange);
  CHECK(InterferenceCost{0.0}.db() == -INFINITY);
}

TEST_CASE("interference table rows match hop interference") {
  const auto in = oracles::random_strategic(3);
  const auto& g = in.graph;
  for (int i = 0; i < static_cast<int>(g.node_count()); ++i) {
    std::vector<Position3> pos;
    for (int t = 0; t < g.grid().n_slots; ++t) pos.push_back(g.position_at_slot(i, t));
    for (int t = 0; t < g.grid().n_slots; ++t) {
      const double a = in.table.cost(i, t, 5.0, g.grid().dt);
      const double b = hop_interference(g.map(), pos, 5.0, {t, t}, in.sensitive, g.grid().dt).value;
      CHECK(fixtures::rel_err(a, b) < 1e-12);
    }
  }
}

TEST_CASE("reserve_path equals exhaustive enumeration") {
  int feasible = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const auto in = oracles::random_strategic(seed);
    for (auto obj : {PlanObjective::kInterference, PlanObjective::kDelay}) {
      const auto oracle = oracles::brute_force_cost(in, obj);
      if (!oracle) {
        CHECK_THROWS_AS(reserve_path(in.graph, in.table, in.src, in.dst, in.deadline_s, in.budget,
                                     options_for(in, obj)),
                        NoFeasiblePath);
        continue;
      }
      ++feasible;
      const auto r = reserve_path(in.graph, in.table, in.src, in.dst, in.deadline_s, in.budget,
                                  options_for(in, obj));
      if (obj == PlanObjective::kInterference) {
        CHECK(r.predicted_cost == *oracle);
      } else {
        CHECK((r.delivery_slot - r.injection_slot) * in.graph.grid().dt == doctest::Approx(*oracle));
      }
      CHECK(check_reservation(r, in.src, in.dst, in.graph.grid().slots_for(in.deadline_s),
                              in.budget.p_max_dbm) == "");
      if (in.use_occupancy) {
        for (const auto& h : r.hops) {
          CHECK_FALSE(in.occupancy.busy(h.tx, h.slot));
          CHECK_FALSE(in.occupancy.busy(h.rx, h.slot));
        }
      }
    }
  }
  CHECK(feasible > 60);
}

TEST_CASE("windows are disjoint and contain the planned slot") {
  const auto c = oracles::corridor(1);
  ReserveOptions o;
  o.tactical_slack_slots = 5;
  const auto r = reserve_path(c.graph, c.table, c.kSource, c.kDest, 20.0, c.budget, o);
  CHECK(check_reservation(r, c.kSource, c.kDest, 200, c.budget.p_max_dbm) == "");
  CHECK(r.hops.front().window.start >= 0);
}

TEST_CASE("a longer deadline never costs more") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto c = oracles::corridor(seed);
    const auto r20 = reserve_path(c.graph, c.table, c.kSource, c.kDest, 20.0, c.budget);
    const auto r2 = reserve_path(c.graph, c.table, c.kSource, c.kDest, 2.0, c.budget);
    CHECK(r2.predicted_cost >= r20.predicted_cost);
    CHECK(r20.carry_intervals() >= 1);
    CHECK(r2.carry_intervals() == 0);
    CHECK(r2.hops.size() >= 2);
  }
}

TEST_CASE("reserve_path argument errors") {
  const auto c = oracles::corridor(1);
  CHECK_THROWS_AS(reserve_path(c.graph, c.table, 999, c.kDest, 20.0, c.budget), UnknownNode);
  CHECK_THROWS_AS(reserve_path(c.graph, c.table, c.kSource, c.kDest, 0.01, c.budget), InvalidArgument);
  ReserveOptions o;
  o.injection_slot = 10000;
  CHECK_THROWS_AS(reserve_path(c.graph, c.table, c.kSource, c.kDest, 20.0, c.budget, o), OutOfRange);
  const auto same = reserve_path(c.graph, c.table, c.kSource, c.kSource, 2.0, c.budget);
  CHECK(same.hops.empty());
  CHECK(same.predicted_cost == 0.0);
}

TEST_CASE("occupancy blocks nodes per slot") {
  Occupancy occ;
  occ.mark_transmission(1, 2, 5);
  CHECK(occ.busy(1, 5));
  CHECK(occ.busy(2, 5));
  CHECK_FALSE(occ.busy(1, 6));
  CHECK(occ.size() == 2);
}

TEST_CASE("check_reservation catches broken plans") {
  PathReservation r;
  r.injection_slot = 0;
  r.hops = {{1, 2, {0, 1}, 0, 10.0, false}, {2, 3, {1, 3}, 2, 10.0, true}};
  r.delivery_slot = 3;
  CHECK(check_reservation(r, 1, 3, 10, 20.0) == "hop windows overlap");
  r.hops[1].window = {2, 3};
  CHECK(check_reservation(r, 1, 3, 10, 20.0) == "");
  CHECK(check_reservation(r, 1, 3, 10, 5.0) == "hop power above p_max");
  CHECK(check_reservation(r, 1, 3, 2, 20.0) == "deadline exceeded");
  r.delivery_slot = 4;
  CHECK(check_reservation(r, 1, 3, 10, 20.0) == "delivery slot mismatch");
}
