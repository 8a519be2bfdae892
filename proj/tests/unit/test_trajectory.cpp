#include <cmath>
#include <random>

#include "aeris/error.hpp"
#include "aeris/trajectory.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace aeris;

TEST_CASE("position_at interpolates linearly and clamps") {
  Trajectory4D t{1, {{0.0, {0, 0, 50}}, {10.0, {100, 0, 50}}, {20.0, {100, 200, 70}}}};
  CHECK(position_at(t, 0.0) == Position3{0, 0, 50});
  CHECK(position_at(t, 10.0) == Position3{100, 0, 50});
  CHECK(position_at(t, 20.0) == Position3{100, 200, 70});
  CHECK(position_at(t, -5.0) == Position3{0, 0, 50});
  CHECK(position_at(t, 99.0) == Position3{100, 200, 70});

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  for (int k = 0; k < 1000; ++k) {
    const double s = u(rng);
    const auto& w = t.waypoints;
    const std::size_t i = s < 10.0 ? 0 : 1;
    const double f = (s - w[i].t) / (w[i + 1].t - w[i].t);
    const Position3 expect = w[i].pos + f * (w[i + 1].pos - w[i].pos);
    const Position3 got = position_at(t, s);
    CHECK(distance(got, expect) < 1e-9);
  }
}

TEST_CASE("trajectory validation") {
  Trajectory4D ok{1, {{0.0, {0, 0, 50}}, {10.0, {100, 0, 50}}}};
  CHECK_NOTHROW(ok.validate(30.0));
  CHECK(ok.max_speed() == doctest::Approx(10.0));
  CHECK_THROWS_AS(ok.validate(5.0), InvalidArgument);

  Trajectory4D one{1, {{0.0, {0, 0, 50}}}};
  CHECK_THROWS_AS(one.validate(30.0), InvalidArgument);

  Trajectory4D back{1, {{0.0, {0, 0, 50}}, {0.0, {1, 0, 50}}}};
  CHECK_THROWS_AS(back.validate(30.0), InvalidArgument);

  Trajectory4D neg{1, {{-1.0, {0, 0, 50}}, {1.0, {1, 0, 50}}}};
  CHECK_THROWS_AS(neg.validate(30.0), InvalidArgument);
}

TEST_CASE("zero deviation reproduces the plan") {
  const Trajectory4D t = fixtures::line(4, {0, 0, 60}, {300, 0, 60}, 0.0, 30.0);
  const SlotGrid grid{0.0, 0.1, 300};
  const RealizedPath r = realize(t, {0.0, 0.1}, grid, 9);
  for (int s = 0; s < grid.n_slots; ++s) CHECK(r.at_slot(s) == position_at(t, grid.time(s)));
  CHECK(realized_position_at(t, r, 12.34) == position_at(t, 12.34));
}

TEST_CASE("deviation process matches the OU moments") {
  // Monte Carlo over independent seeds: stationary mean 0, variance sigma^2,
  // lag-k autocorrelation exp(-rate * k * dt).
  const double sigma = 5.0, rate = 0.1, dt = 0.1;
  const Trajectory4D t = fixtures::hover(1, {500, 500, 100}, 100.0);
  const SlotGrid grid{0.0, dt, 60};
  const int n = 4000;
  const int lag = 50;
  double sum0 = 0, sq0 = 0, sq_last = 0, cross = 0;
  for (int k = 0; k < n; ++k) {
    const RealizedPath r = realize(t, {sigma, rate}, grid, 1000 + k);
    const double x0 = r.offsets[0].x;
    const double xl = r.offsets[lag].x;
    sum0 += x0;
    sq0 += x0 * x0;
    sq_last += xl * xl;
    cross += x0 * xl;
  }
  const double var = sigma * sigma;
  CHECK(std::abs(sum0 / n) < 4 * sigma / std::sqrt(n));
  // Var of a sample variance of n Gaussians: 2 sigma^4 / n.
  CHECK(std::abs(sq0 / n - var) < 4 * var * std::sqrt(2.0 / n));
  CHECK(std::abs(sq_last / n - var) < 4 * var * std::sqrt(2.0 / n));
  const double rho = std::exp(-rate * lag * dt);
  CHECK(std::abs(cross / n / var - rho) < 0.08);
}

TEST_CASE("realize is deterministic and per-aircraft independent") {
  const SlotGrid grid{0.0, 0.1, 100};
  const Trajectory4D a = fixtures::hover(1, {100, 100, 100}, 20.0);
  Trajectory4D b = a;
  b.aircraft_id = 2;
  const auto ra = realize(a, {3.0, 0.1}, grid, 5);
  CHECK(ra == realize(a, {3.0, 0.1}, grid, 5));
  CHECK_FALSE(ra.offsets == realize(b, {3.0, 0.1}, grid, 5).offsets);
  CHECK_FALSE(ra.offsets == realize(a, {3.0, 0.1}, grid, 6).offsets);
}

TEST_CASE("altitude never goes below ground") {
  const SlotGrid grid{0.0, 0.1, 500};
  const Trajectory4D low = fixtures::hover(1, {100, 100, 0.5}, 60.0);
  const auto r = realize(low, {20.0, 0.1}, grid, 1);
  for (const auto& p : r.positions) CHECK(p.z >= 0.0);
}

TEST_CASE("offset interpolation between slots") {
  const SlotGrid grid{0.0, 1.0, 10};
  const Trajectory4D t = fixtures::hover(1, {0, 0, 50}, 20.0);
  const auto r = realize(t, {2.0, 0.5}, grid, 2);
  const Position3 mid = r.offset_at(3.5);
  const Position3 expect = r.offsets[3] + 0.5 * (r.offsets[4] - r.offsets[3]);
  CHECK(distance(mid, expect) < 1e-12);
  CHECK(r.offset_at(-1.0) == r.offsets.front());
  CHECK(r.offset_at(100.0) == r.offsets.back());
}

TEST_CASE("deviation params validation") {
  CHECK_THROWS_AS((DeviationParams{-1.0, 0.1}).validate(), InvalidArgument);
  CHECK_THROWS_AS((DeviationParams{1.0, 0.0}).validate(), InvalidArgument);
}
