#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include "aeris/error.hpp"
#include "aeris/harness.hpp"
#include "aeris/random.hpp"

namespace aeris {

const char* method_name(Method m) {
  switch (m) {
    case Method::kPredictive: return "predictive";
    case Method::kBaselineAggregate: return "baseline_aggregate";
    case Method::kBaselineSpacetime: return "baseline_spacetime";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  for (Method m : all_methods()) {
    if (name == method_name(m)) return m;
  }
  throw ConfigInvalid("method: unknown method '" + name + "'");
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods{Method::kPredictive, Method::kBaselineAggregate,
                                           Method::kBaselineSpacetime};
  return methods;
}

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigInvalid(field + ": " + what);
}

template <class F>
void wrap(const std::string& field, F&& f) {
  try {
    f();
  } catch (const InvalidArgument& e) {
    throw ConfigInvalid(field + ": " + e.what());
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  if (scene) {
    wrap("scene", [&] { scene->validate(); });
  } else {
    wrap("city", [&] { city.validate(); });
  }

  const auto& a = aircraft;
  require(a.count >= 0, "aircraft.count", "must be >= 0");
  require(a.altitude_min > 0 && a.altitude_min <= a.altitude_max, "aircraft.altitude_min",
          "need 0 < altitude_min <= altitude_max");
  require(a.speed_min > 0 && a.speed_min <= a.speed_max, "aircraft.speed_min",
          "need 0 < speed_min <= speed_max");
  require(a.speed_max <= a.v_max && std::isfinite(a.v_max), "aircraft.v_max", "must be >= speed_max");
  require(a.ferry_fraction >= 0 && a.ferry_fraction <= 1, "aircraft.ferry_fraction", "must lie in [0, 1]");
  require(a.lane_spacing > 0, "aircraft.lane_spacing", "must be > 0");
  if (!scene) {
    require(a.altitude_max <= city.size_z, "aircraft.altitude_max", "above the scene ceiling");
  }

  if (trajectories) {
    std::set<NodeId> ids;
    for (std::size_t k = 0; k < trajectories->size(); ++k) {
      const auto& t = (*trajectories)[k];
      wrap("trajectories[" + std::to_string(k) + "]", [&] { t.validate(a.v_max); });
      require(ids.insert(t.aircraft_id).second, "trajectories[" + std::to_string(k) + "].aircraft_id",
              "duplicate id " + std::to_string(t.aircraft_id));
    }
    if (scene) {
      for (const auto& g : scene->terminals()) {
        require(!ids.count(g.id), "trajectories", "aircraft id clashes with ground node " + std::to_string(g.id));
      }
      for (const auto& g : scene->sensitive_nodes) {
        require(!ids.count(g.id), "trajectories", "aircraft id clashes with ground node " + std::to_string(g.id));
      }
    }
  }

  wrap("deviation", [&] { deviation.validate(); });
  wrap("grid", [&] { grid.validate(); });
  wrap("pathloss", [&] { pathloss.validate(); });
  wrap("budget", [&] { budget.validate(); });
  require(std::isfinite(per_node_cap_dbm), "per_node_cap_dbm", "must be finite");

  wrap("horizons", [&] { validate_horizons(horizons.central_s, horizons.local_s, horizons.individual_s); });
  require(horizons.central_staleness_s >= 0, "horizons.central_staleness_s", "must be >= 0");
  require(horizons.individual_memory_s > 0, "horizons.individual_memory_s", "must be > 0");

  require(maps.history_period_s > 0, "maps.history_period_s", "must be > 0");
  require(maps.fresh_period_s > 0, "maps.fresh_period_s", "must be > 0");
  require(maps.idw_exponent > 0, "maps.idw_exponent", "must be > 0");
  require(maps.k_neighbors >= 1, "maps.k_neighbors", "must be >= 1");
  require(maps.central_residual_std_db >= 0, "maps.central_residual_std_db", "must be >= 0");
  require(maps.local_residual_std_db >= 0, "maps.local_residual_std_db", "must be >= 0");
  require(maps.individual_residual_std_db >= 0, "maps.individual_residual_std_db", "must be >= 0");

  require(planning.tactical_slack_slots >= 0, "planning.tactical_slack_slots", "must be >= 0");
  require(planning.local_radius_m > 0, "planning.local_radius_m", "must be > 0");
  require(planning.range_cutoff_m > 0, "planning.range_cutoff_m", "must be > 0");

  const auto& tr = traffic;
  require(tr.load_per_min >= 0 && std::isfinite(tr.load_per_min), "traffic.load_per_min", "must be >= 0");
  require(tr.frac_2s >= 0 && tr.frac_2s <= 1, "traffic.frac_2s", "must lie in [0, 1]");
  require(tr.frac_20s >= 0 && tr.frac_20s <= 1, "traffic.frac_20s", "must lie in [0, 1]");
  require(std::abs(tr.frac_2s + tr.frac_20s - 1.0) <= 1e-9, "traffic.frac_2s",
          "deadline class fractions must sum to 1");
  require(tr.arrival_margin_s >= 0 && tr.arrival_margin_s < grid.horizon(), "traffic.arrival_margin_s",
          "must be >= 0 and shorter than the horizon");
}

namespace {

// Waypoints along a closed polygon at constant speed, entered at a random
// phase, long enough to cover [t0, t_end].
std::vector<Waypoint> loop_waypoints(const std::vector<Position3>& corners, double speed, double t0,
                                     double t_end, Rng& rng) {
  const std::size_t n = corners.size();
  std::vector<double> leg(n);
  double perimeter = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    leg[k] = distance(corners[k], corners[(k + 1) % n]);
    perimeter += leg[k];
  }
  double s = std::uniform_real_distribution<double>(0.0, perimeter)(rng);
  std::size_t k = 0;
  while (k + 1 < n && s >= leg[k]) {
    s -= leg[k];
    ++k;
  }
  const Position3 a = corners[k];
  const Position3 b = corners[(k + 1) % n];
  const double f = leg[k] > 0 ? std::min(1.0, s / leg[k]) : 0.0;

  std::vector<Waypoint> wps;
  wps.push_back({t0, a + f * (b - a)});
  double t = t0 + (leg[k] - s) / speed;
  std::size_t next = (k + 1) % n;
  while (true) {
    if (t > wps.back().t) wps.push_back({t, corners[next]});
    if (t >= t_end) break;
    t += leg[next] / speed;
    next = (next + 1) % n;
  }
  if (wps.size() < 2) wps.push_back({t_end, wps.back().pos});
  return wps;
}

}  // namespace

std::vector<Trajectory4D> gen_routes(const Scene& scene, const AircraftParams& p, const SlotGrid& grid,
                                     std::uint64_t seed) {
  const Position3 lo = scene.bounds.lo;
  const Position3 hi = scene.bounds.hi;
  const double sx = hi.x - lo.x;
  const double sy = hi.y - lo.y;
  const int n_ferry = static_cast<int>(std::lround(p.ferry_fraction * p.count));
  std::uniform_real_distribution<double> u(0.0, 1.0);

  std::vector<Trajectory4D> out;
  for (int k = 0; k < p.count; ++k) {
    Rng rng = make_rng(seed, Stream::kCity, {0x726f757465ULL, static_cast<std::uint64_t>(k)});
    const double z = std::min(hi.z, p.altitude_min + (p.altitude_max - p.altitude_min) * u(rng));
    const double v = p.speed_min + (p.speed_max - p.speed_min) * u(rng);
    std::vector<Position3> corners;
    if (k < n_ferry) {
      const double xa = lo.x + sx * (0.05 + 0.10 * u(rng));
      const double xb = lo.x + sx * (0.85 + 0.10 * u(rng));
      const double ya = lo.y + sy * (0.1 + 0.8 * u(rng));
      const double yb = lo.y + sy * (0.1 + 0.8 * u(rng));
      corners = {{xa, ya, z}, {xb, yb, z}};
    } else {
      const double w = std::min(sx * 0.9, 250.0 + 200.0 * u(rng));
      const double h = std::min(sy * 0.9, 250.0 + 200.0 * u(rng));
      const double x0 = lo.x + 0.05 * sx + (0.9 * sx - w) * u(rng);
      const double y0 = lo.y + 0.05 * sy + (0.9 * sy - h) * u(rng);
      const int lanes = std::max(1, static_cast<int>(h / p.lane_spacing));
      for (int l = 0; l <= lanes; ++l) {
        const double y = y0 + h * l / lanes;
        if (l % 2 == 0) {
          corners.push_back({x0, y, z});
          corners.push_back({x0 + w, y, z});
        } else {
          corners.push_back({x0 + w, y, z});
          corners.push_back({x0, y, z});
        }
      }
    }
    Trajectory4D traj;
    traj.aircraft_id = k + 1;
    traj.waypoints = loop_waypoints(corners, v, grid.t0, grid.end_time() + 1.0, rng);
    out.push_back(std::move(traj));
  }
  return out;
}

ScenarioConfig gen_scenario(ScenarioConfig config) {
  if (!config.scene) config.scene = gen_city(config.city, derive_seed(config.seed, Stream::kCity));
  if (!config.trajectories) {
    config.trajectories = gen_routes(*config.scene, config.aircraft, config.grid, config.seed);
  }
  return config;
}

std::vector<FlowRequest> gen_flows(const ScenarioConfig& config, const Scene& scene, std::uint64_t seed) {
  std::vector<FlowRequest> flows;
  const auto& tr = config.traffic;
  if (!(tr.load_per_min > 0)) return flows;
  if (scene.ground_sources.empty() || scene.ground_destinations.empty()) {
    throw ConfigInvalid("scene: traffic needs at least one source and one destination");
  }
  Rng rng = make_rng(seed, Stream::kFlows);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double interval = 60.0 / tr.load_per_min;
  const double last = config.grid.horizon() - tr.arrival_margin_s;
  const double phase = interval * u(rng);
  for (int k = 0;; ++k) {
    const double t = phase + k * interval;
    if (t >= last) break;
    FlowRequest f;
    f.id = k;
    f.injection_slot = static_cast<int>(std::floor(t / config.grid.dt));
    const auto src_pick = static_cast<std::size_t>(u(rng) * scene.ground_sources.size());
    const auto dst_pick = static_cast<std::size_t>(u(rng) * scene.ground_destinations.size());
    f.source = scene.ground_sources[std::min(src_pick, scene.ground_sources.size() - 1)].id;
    f.dest = scene.ground_destinations[std::min(dst_pick, scene.ground_destinations.size() - 1)].id;
    f.deadline_s = u(rng) < tr.frac_2s ? 2.0 : 20.0;
    flows.push_back(f);
  }
  return flows;
}

}  // namespace aeris
