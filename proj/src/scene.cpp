#include "aeris/scene.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "aeris/error.hpp"
#include "aeris/random.hpp"

namespace aeris {

namespace {

std::string node_label(const GroundNode& n) { return "node " + std::to_string(n.id); }

}  // namespace

std::optional<std::string> Scene::check() const {
  if (!bounds.valid()) return "bounds must have max > min on every axis";
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const auto& o = obstacles[i];
    if (!o.valid()) return "obstacle " + std::to_string(i) + " is degenerate";
    if (!bounds.contains(o)) return "obstacle " + std::to_string(i) + " lies outside bounds";
  }
  std::set<NodeId> ids;
  for (const auto* list : {&ground_sources, &ground_destinations, &sensitive_nodes}) {
    for (const auto& n : *list) {
      if (!n.pos.finite() || n.pos.z < 0.0) return node_label(n) + " has invalid position";
      if (!bounds.contains(n.pos)) return node_label(n) + " lies outside bounds";
      for (const auto& o : obstacles) {
        if (o.strictly_contains(n.pos)) return node_label(n) + " lies inside an obstacle";
      }
      if (!ids.insert(n.id).second) return "duplicate node id " + std::to_string(n.id);
    }
  }
  return std::nullopt;
}

void Scene::validate() const {
  if (auto err = check()) throw InvalidArgument(*err);
}

std::vector<GroundNode> Scene::terminals() const {
  std::vector<GroundNode> out = ground_sources;
  out.insert(out.end(), ground_destinations.begin(), ground_destinations.end());
  return out;
}

std::optional<GroundNode> Scene::find_node(NodeId id) const {
  for (const auto* list : {&ground_sources, &ground_destinations, &sensitive_nodes}) {
    for (const auto& n : *list) {
      if (n.id == id) return n;
    }
  }
  return std::nullopt;
}

bool segment_hits_interior(const ObstacleBox& box, const Position3& a, const Position3& b) {
  double t_enter = 0.0;
  double t_exit = 1.0;
  for (int axis = 0; axis < 3; ++axis) {
    const double p = a[axis];
    const double d = b[axis] - p;
    const double lo = box.lo[axis];
    const double hi = box.hi[axis];
    if (d == 0.0) {
      if (!(p > lo && p < hi)) return false;
      continue;
    }
    double t1 = (lo - p) / d;
    double t2 = (hi - p) / d;
    if (t1 > t2) std::swap(t1, t2);
    t_enter = std::max(t_enter, t1);
    t_exit = std::min(t_exit, t2);
    if (!(t_enter < t_exit)) return false;
  }
  return t_enter < t_exit;
}

bool los_blocked(const Scene& scene, const Position3& a, const Position3& b) {
  if (a == b) return false;
  // Canonical endpoint order makes the result bit-symmetric.
  const bool swap = lex_less(b, a);
  const Position3& p = swap ? b : a;
  const Position3& q = swap ? a : b;
  for (const auto& box : scene.obstacles) {
    if (segment_hits_interior(box, p, q)) return true;
  }
  return false;
}

void CityParams::validate() const {
  if (!(size_x > 0 && size_y > 0 && size_z > 0)) throw InvalidArgument("city size must be positive");
  if (building_count < 0) throw InvalidArgument("building_count must be non-negative");
  if (!(footprint_min > 0 && footprint_max >= footprint_min))
    throw InvalidArgument("footprint range invalid");
  if (footprint_max > std::min(size_x, size_y))
    throw InvalidArgument("footprint_max exceeds city bounds");
  if (!(height_min > 0 && height_max >= height_min && height_max <= size_z))
    throw InvalidArgument("height range invalid");
  if (n_sources < 0 || n_destinations < 0 || n_sensitive < 0)
    throw InvalidArgument("node counts must be non-negative");
  if (!(ground_height >= 0 && ground_height <= size_z))
    throw InvalidArgument("ground_height outside bounds");
  if (max_retries < 1) throw InvalidArgument("max_retries must be >= 1");
  if (!(terminal_band > 0 && terminal_band <= 1)) throw InvalidArgument("terminal_band must lie in (0, 1]");
}

Scene gen_city(const CityParams& params, std::uint64_t seed) {
  params.validate();
  Rng rng = make_rng(seed, Stream::kCity);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  Scene scene;
  scene.bounds = {{0.0, 0.0, 0.0}, {params.size_x, params.size_y, params.size_z}};
  scene.obstacles.reserve(params.building_count);
  for (int i = 0; i < params.building_count; ++i) {
    const double w = uniform(params.footprint_min, params.footprint_max);
    const double l = uniform(params.footprint_min, params.footprint_max);
    const double h = uniform(params.height_min, params.height_max);
    const double x0 = uniform(0.0, params.size_x - w);
    const double y0 = uniform(0.0, params.size_y - l);
    scene.obstacles.push_back({{x0, y0, 0.0}, {x0 + w, y0 + l, h}});
  }

  NodeId next_id = params.first_id;
  auto place = [&](std::vector<GroundNode>& out, int count, double x_lo, double x_hi) {
    for (int i = 0; i < count; ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < params.max_retries && !placed; ++attempt) {
        Position3 p{uniform(x_lo, x_hi), uniform(0.0, params.size_y), params.ground_height};
        const bool inside = std::any_of(scene.obstacles.begin(), scene.obstacles.end(),
                                        [&](const ObstacleBox& o) { return o.strictly_contains(p); });
        if (!inside) {
          out.push_back({next_id++, p});
          placed = true;
        }
      }
      if (!placed) {
        throw GenerationFailed("could not place ground node " + std::to_string(next_id) +
                               " outside obstacles after " + std::to_string(params.max_retries) +
                               " attempts");
      }
    }
  };
  const double band = params.terminal_band * params.size_x;
  place(scene.ground_sources, params.n_sources, 0.0, band);
  place(scene.ground_destinations, params.n_destinations, params.size_x - band, params.size_x);
  place(scene.sensitive_nodes, params.n_sensitive, 0.0, params.size_x);
  scene.validate();
  return scene;
}

}  // namespace aeris
