#include "aeris/channel_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "aeris/error.hpp"

namespace aeris {

bool ChannelGraph::has_node(NodeId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

int ChannelGraph::index_of(NodeId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) throw UnknownNode("node " + std::to_string(id));
  return static_cast<int>(it - ids_.begin());
}

std::size_t ChannelGraph::pair_offset(int a, int b) const {
  if (a > b) std::swap(a, b);
  const auto n = static_cast<std::size_t>(ids_.size());
  const auto ua = static_cast<std::size_t>(a);
  const auto ub = static_cast<std::size_t>(b);
  // Row-major index into the strict upper triangle.
  const std::size_t pair = ua * n - ua * (ua + 1) / 2 + (ub - ua - 1);
  return pair * static_cast<std::size_t>(grid_.n_slots);
}

double ChannelGraph::weight_at(int a, int b, int slot) const {
  if (a == b) return std::numeric_limits<double>::quiet_NaN();
  return weights_[pair_offset(a, b) + slot];
}

std::optional<double> ChannelGraph::weight(NodeId i, NodeId j, int slot) const {
  if (!grid_.contains(slot)) throw OutOfRange("slot " + std::to_string(slot));
  const double w = weight_at(index_of(i), index_of(j), slot);
  if (std::isnan(w)) return std::nullopt;
  return w;
}

ChannelGraph synthesize(std::span<const Trajectory4D> trajs, std::span<const GroundNode> ground,
                        const RadioMap& map, const SlotGrid& grid, double range_cutoff) {
  grid.validate();
  if (!(range_cutoff > 0)) throw InvalidArgument("range_cutoff must be > 0");

  struct Source {
    NodeId id;
    const Trajectory4D* traj;
    Position3 fixed;
  };
  std::vector<Source> sources;
  for (const auto& t : trajs) sources.push_back({t.aircraft_id, &t, {}});
  for (const auto& g : ground) sources.push_back({g.id, nullptr, g.pos});
  std::sort(sources.begin(), sources.end(),
            [](const Source& a, const Source& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < sources.size(); ++i) {
    if (sources[i].id == sources[i - 1].id)
      throw InvalidArgument("duplicate node id " + std::to_string(sources[i].id));
  }

  ChannelGraph g;
  g.grid_ = grid;
  g.range_cutoff_ = range_cutoff;
  g.map_ = map;
  const std::size_t n = sources.size();
  const auto slots = static_cast<std::size_t>(grid.n_slots);
  g.ids_.reserve(n);
  g.aircraft_.reserve(n);
  g.positions_.resize(n * slots);
  for (std::size_t i = 0; i < n; ++i) {
    g.ids_.push_back(sources[i].id);
    g.aircraft_.push_back(sources[i].traj != nullptr);
    for (std::size_t k = 0; k < slots; ++k) {
      g.positions_[i * slots + k] = sources[i].traj
                                        ? position_at(*sources[i].traj, grid.time(static_cast<int>(k)))
                                        : sources[i].fixed;
    }
  }

  const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  g.weights_.assign(pairs * slots, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::size_t base = g.pair_offset(static_cast<int>(a), static_cast<int>(b));
      for (std::size_t k = 0; k < slots; ++k) {
        const Position3& pa = g.positions_[a * slots + k];
        const Position3& pb = g.positions_[b * slots + k];
        if (distance(pa, pb) > range_cutoff) continue;
        g.weights_[base + k] = map.query(pa, pb).mean_gain_db;
      }
    }
  }
  return g;
}

LinkForecast link_forecast(const ChannelGraph& graph, NodeId i, NodeId j) {
  if (i == j) throw InvalidArgument("link_forecast needs two distinct nodes");
  const int a = graph.index_of(i);
  const int b = graph.index_of(j);
  LinkForecast f;
  f.i = i;
  f.j = j;
  f.per_slot.resize(graph.grid().n_slots);
  for (int k = 0; k < graph.grid().n_slots; ++k) {
    const double w = graph.weight_at(a, b, k);
    if (std::isnan(w)) continue;
    LargeScaleStats s = graph.map().query(graph.position_at_slot(a, k), graph.position_at_slot(b, k));
    s.mean_gain_db = w;
    f.per_slot[k] = s;
  }
  return f;
}

}  // namespace aeris
