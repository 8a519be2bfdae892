#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aeris/geometry.hpp"
#include "aeris/slot_grid.hpp"

namespace aeris {

struct Waypoint {
  double t = 0.0;  // seconds since scenario start
  Position3 pos;
  friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

// Pre-filed 4D flight plan. Piecewise linear between waypoints, clamped to
// the terminal waypoints outside its time span.
struct Trajectory4D {
  NodeId aircraft_id = 0;
  std::vector<Waypoint> waypoints;

  friend bool operator==(const Trajectory4D&, const Trajectory4D&) = default;

  // Throws InvalidArgument unless there are >= 2 waypoints, times are finite,
  // non-negative and strictly increasing, and no leg exceeds v_max.
  void validate(double v_max) const;

  double start_time() const { return waypoints.front().t; }
  double end_time() const { return waypoints.back().t; }
  double max_speed() const;
};

Position3 position_at(const Trajectory4D& traj, double t);

struct DeviationParams {
  double sigma_dev = 0.0;       // stationary per-axis std, meters
  double reversion_rate = 0.1;  // 1/s

  void validate() const;
};

// One aircraft's flown path sampled on a slot grid: planned position plus an
// Ornstein-Uhlenbeck offset per axis.
struct RealizedPath {
  NodeId aircraft_id = 0;
  SlotGrid grid;
  std::vector<Position3> offsets;    // per slot
  std::vector<Position3> positions;  // per slot, planned + offset

  friend bool operator==(const RealizedPath&, const RealizedPath&) = default;

  const Position3& at_slot(int slot) const { return positions.at(slot); }
  // Offset interpolated linearly between slots (clamped at the ends).
  Position3 offset_at(double t) const;
};

// Upper bound on grid length accepted by realize().
inline constexpr int kMaxRealizeSlots = 50'000'000;

// The offset process is sampled exactly on the grid:
//   x[k+1] = a*x[k] + sigma*sqrt(1-a^2)*N(0,1),  a = exp(-rate*dt),
// started from its stationary law N(0, sigma^2). Altitude is floored at 0.
RealizedPath realize(const Trajectory4D& traj, const DeviationParams& dev, const SlotGrid& grid,
                     std::uint64_t seed);

// Realized position at an arbitrary time: plan plus interpolated offset.
Position3 realized_position_at(const Trajectory4D& traj, const RealizedPath& path, double t);

}  // namespace aeris
