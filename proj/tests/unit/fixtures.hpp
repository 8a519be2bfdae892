#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "aeris/geometry.hpp"
#include "aeris/radio_env.hpp"
#include "aeris/scene.hpp"
#include "aeris/trajectory.hpp"

namespace fixtures {

using aeris::NodeId;
using aeris::Position3;

inline aeris::Scene open_scene(double size = 1000.0, double height = 150.0) {
  aeris::Scene s;
  s.bounds = {{0, 0, 0}, {size, size, height}};
  return s;
}

inline aeris::Trajectory4D hover(NodeId id, Position3 p, double t_end) {
  return {id, {{0.0, p}, {t_end, p}}};
}

inline aeris::Trajectory4D line(NodeId id, Position3 a, Position3 b, double t0, double t1) {
  return {id, {{t0, a}, {t1, b}}};
}

// Path loss without shadowing: gains are the deterministic law.
inline aeris::PathLossParams no_shadow() {
  aeris::PathLossParams p;
  p.sigma_sh_los_db = 0.0;
  p.sigma_sh_nlos_db = 0.0;
  return p;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace fixtures
