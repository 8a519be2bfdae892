#pragma once

#include <optional>
#include <span>
#include <vector>

#include "aeris/geometry.hpp"
#include "aeris/radio_env.hpp"
#include "aeris/scene.hpp"
#include "aeris/slot_grid.hpp"
#include "aeris/trajectory.hpp"

namespace aeris {

inline constexpr double kDefaultRangeCutoff = 1500.0;

// Time-indexed graph of predicted large-scale link gains. Weights are a pure
// memoization of (plan interpolation, map query); an edge exists in a slot iff
// the two nodes are within range_cutoff of each other.
class ChannelGraph {
 public:
  const SlotGrid& grid() const { return grid_; }
  double range_cutoff() const { return range_cutoff_; }
  const RadioMap& map() const { return map_; }
  // Ascending node ids.
  const std::vector<NodeId>& nodes() const { return ids_; }
  std::size_t node_count() const { return ids_.size(); }

  bool has_node(NodeId id) const;
  // Dense index of a node id; throws UnknownNode.
  int index_of(NodeId id) const;
  bool is_aircraft(int index) const { return aircraft_[index]; }

  // Expected gain in dB, or nullopt when the pair is out of range (or i == j).
  std::optional<double> weight(NodeId i, NodeId j, int slot) const;
  // Index-based access; NaN when absent.
  double weight_at(int a, int b, int slot) const;
  const Position3& position_at_slot(int index, int slot) const {
    return positions_[static_cast<std::size_t>(index) * grid_.n_slots + slot];
  }

 private:
  std::size_t pair_offset(int a, int b) const;

  SlotGrid grid_;
  double range_cutoff_ = kDefaultRangeCutoff;
  RadioMap map_;
  std::vector<NodeId> ids_;
  std::vector<bool> aircraft_;
  std::vector<Position3> positions_;  // node-major, n_slots per node
  std::vector<double> weights_;       // pair-major upper triangle, n_slots per pair

  friend ChannelGraph synthesize(std::span<const Trajectory4D>, std::span<const GroundNode>,
                                 const RadioMap&, const SlotGrid&, double);
};

// Aircraft follow their planned trajectories; ground nodes are static.
// Throws InvalidArgument on duplicate ids or a non-positive cutoff.
ChannelGraph synthesize(std::span<const Trajectory4D> trajs, std::span<const GroundNode> ground,
                        const RadioMap& map, const SlotGrid& grid,
                        double range_cutoff = kDefaultRangeCutoff);

struct LinkForecast {
  NodeId i = 0;
  NodeId j = 0;
  // nullopt marks a slot where the link is unavailable.
  std::vector<std::optional<LargeScaleStats>> per_slot;
};

// Throws UnknownNode for an id not in the graph and InvalidArgument if i == j.
LinkForecast link_forecast(const ChannelGraph& graph, NodeId i, NodeId j);

}  // namespace aeris
