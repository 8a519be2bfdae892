#include "aeris/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "aeris/error.hpp"
#include "aeris/random.hpp"

namespace aeris {

void Trajectory4D::validate(double v_max) const {
  const std::string who = "trajectory " + std::to_string(aircraft_id);
  if (waypoints.size() < 2) throw InvalidArgument(who + " needs at least 2 waypoints");
  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    const auto& w = waypoints[i];
    if (!std::isfinite(w.t) || w.t < 0.0) throw InvalidArgument(who + " has an invalid time");
    if (!w.pos.finite() || w.pos.z < 0.0) throw InvalidArgument(who + " has an invalid position");
    if (i == 0) continue;
    const auto& prev = waypoints[i - 1];
    if (!(w.t > prev.t)) throw InvalidArgument(who + " times must be strictly increasing");
    const double speed = distance(w.pos, prev.pos) / (w.t - prev.t);
    if (speed > v_max * (1.0 + 1e-12)) {
      throw InvalidArgument(who + " leg " + std::to_string(i) + " exceeds v_max");
    }
  }
}

double Trajectory4D::max_speed() const {
  double v = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    v = std::max(v, distance(waypoints[i].pos, waypoints[i - 1].pos) /
                        (waypoints[i].t - waypoints[i - 1].t));
  }
  return v;
}

Position3 position_at(const Trajectory4D& traj, double t) {
  const auto& wp = traj.waypoints;
  if (t <= wp.front().t) return wp.front().pos;
  if (t >= wp.back().t) return wp.back().pos;
  auto hi = std::upper_bound(wp.begin(), wp.end(), t,
                             [](double v, const Waypoint& w) { return v < w.t; });
  auto lo = std::prev(hi);
  const double f = (t - lo->t) / (hi->t - lo->t);
  return lo->pos + f * (hi->pos - lo->pos);
}

void DeviationParams::validate() const {
  if (!(sigma_dev >= 0.0) || !std::isfinite(sigma_dev))
    throw InvalidArgument("sigma_dev must be finite and >= 0");
  if (!(reversion_rate > 0.0) || !std::isfinite(reversion_rate))
    throw InvalidArgument("reversion_rate must be finite and > 0");
}

Position3 RealizedPath::offset_at(double t) const {
  const double u = (t - grid.t0) / grid.dt;
  if (u <= 0.0) return offsets.front();
  const double last = static_cast<double>(offsets.size() - 1);
  if (u >= last) return offsets.back();
  const auto k = static_cast<std::size_t>(std::floor(u));
  const double f = u - static_cast<double>(k);
  return offsets[k] + f * (offsets[k + 1] - offsets[k]);
}

RealizedPath realize(const Trajectory4D& traj, const DeviationParams& dev, const SlotGrid& grid,
                     std::uint64_t seed) {
  grid.validate();
  dev.validate();
  if (grid.n_slots > kMaxRealizeSlots) throw InvalidArgument("slot grid exceeds realize horizon");

  RealizedPath out;
  out.aircraft_id = traj.aircraft_id;
  out.grid = grid;
  out.offsets.resize(grid.n_slots);
  out.positions.resize(grid.n_slots);

  Rng rng = make_rng(seed, Stream::kDeviation, {static_cast<std::uint64_t>(traj.aircraft_id)});
  std::normal_distribution<double> normal(0.0, 1.0);
  const double a = std::exp(-dev.reversion_rate * grid.dt);
  const double innovation = dev.sigma_dev * std::sqrt(1.0 - a * a);

  Position3 x;
  for (int k = 0; k < grid.n_slots; ++k) {
    for (int axis = 0; axis < 3; ++axis) {
      const double xi = normal(rng);
      x[axis] = (k == 0) ? dev.sigma_dev * xi : a * x[axis] + innovation * xi;
    }
    out.offsets[k] = x;
    Position3 p = position_at(traj, grid.time(k));
    if (dev.sigma_dev > 0.0) {
      p += x;
      p.z = std::max(0.0, p.z);
    }
    out.positions[k] = p;
  }
  return out;
}

Position3 realized_position_at(const Trajectory4D& traj, const RealizedPath& path, double t) {
  Position3 p = position_at(traj, t) + path.offset_at(t);
  p.z = std::max(0.0, p.z);
  return p;
}

}  // namespace aeris
