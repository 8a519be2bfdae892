#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aeris/geometry.hpp"

namespace aeris {

enum class NodeRole { kSource, kDestination, kSensitive };

struct GroundNode {
  NodeId id = 0;
  Position3 pos;
  friend bool operator==(const GroundNode&, const GroundNode&) = default;
};

// Static world: bounds, building boxes and ground terminals. Immutable once
// validated; every query is a pure read.
struct Scene {
  ObstacleBox bounds{{0, 0, 0}, {1, 1, 1}};
  std::vector<ObstacleBox> obstacles;
  std::vector<GroundNode> ground_sources;
  std::vector<GroundNode> ground_destinations;
  std::vector<GroundNode> sensitive_nodes;

  friend bool operator==(const Scene&, const Scene&) = default;

  // Throws InvalidArgument naming the first violated invariant.
  void validate() const;
  // Returns the first invariant violation, if any.
  std::optional<std::string> check() const;

  // Sources and destinations in that order (the terminals that carry traffic).
  std::vector<GroundNode> terminals() const;
  std::optional<GroundNode> find_node(NodeId id) const;
};

// True iff the open segment (a, b) passes through the interior of any
// obstacle. Touching a face, edge or corner does not block. Symmetric in
// (a, b) bit for bit.
bool los_blocked(const Scene& scene, const Position3& a, const Position3& b);

// Single-box version of the same test.
bool segment_hits_interior(const ObstacleBox& box, const Position3& a, const Position3& b);

struct CityParams {
  double size_x = 1000.0;
  double size_y = 1000.0;
  double size_z = 150.0;
  int building_count = 20;
  double footprint_min = 30.0;
  double footprint_max = 80.0;
  double height_min = 15.0;
  double height_max = 60.0;
  int n_sources = 1;
  int n_destinations = 1;
  int n_sensitive = 5;
  double ground_height = 1.5;
  // Sources are placed with x in [0, band * size_x] and destinations with x in
  // [(1 - band) * size_x, size_x]; 1 places them anywhere.
  double terminal_band = 1.0;
  // Ids are assigned sequentially from here: sources, destinations, sensitive.
  NodeId first_id = 1000;
  int max_retries = 1000;

  void validate() const;
};

// Deterministic in (params, seed). Throws GenerationFailed if a ground node
// cannot be placed outside every building within the retry budget.
Scene gen_city(const CityParams& params, std::uint64_t seed);

}  // namespace aeris
