#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <span>
#include <utility>
#include <vector>

#include "aeris/channel_graph.hpp"
#include "aeris/operational.hpp"
#include "aeris/radio_env.hpp"
#include "aeris/scene.hpp"

namespace aeris {

// Integrated interference at the sensitive nodes, mW*s.
struct InterferenceCost {
  double value = 0.0;
  // dB relative to 1 mW*s; -inf for zero.
  double db() const { return 10.0 * std::log10(value); }
};

struct SlotWindow {
  int start = 0;
  int end = 0;  // inclusive
  friend bool operator==(const SlotWindow&, const SlotWindow&) = default;
};

// Sum over slots in the window and sensitive nodes g of p * gain(tx(t), g) * dt,
// gains from the map. tx_positions is indexed by absolute slot.
InterferenceCost hop_interference(const RadioMap& map, std::span<const Position3> tx_positions,
                                  double power_dbm, SlotWindow window,
                                  std::span<const GroundNode> sensitive_nodes, double dt);

// Per (graph node, slot): sum over sensitive nodes of the predicted linear
// gain. A transmission by node i in slot t at power p costs
// (p_lin * row(i)[t]) * dt, which equals hop_interference over [t, t].
class InterferenceTable {
 public:
  InterferenceTable() = default;
  InterferenceTable(const ChannelGraph& graph, const RadioMap& map,
                    std::span<const GroundNode> sensitive_nodes);

  double gain_sum(int node_index, int slot) const {
    return sums_[static_cast<std::size_t>(node_index) * n_slots_ + slot];
  }
  double cost(int node_index, int slot, double power_dbm, double dt) const {
    return (db_to_linear(power_dbm) * gain_sum(node_index, slot)) * dt;
  }

 private:
  int n_slots_ = 0;
  std::vector<double> sums_;
};

struct HopReservation {
  NodeId tx = 0;
  NodeId rx = 0;
  SlotWindow window;         // slots in which the tactical layer may transmit
  int slot = 0;              // planned transmit slot, inside window
  double nominal_power_dbm = 0.0;
  bool tx_airborne = false;  // tx is an aircraft (data carried while it waits)

  friend bool operator==(const HopReservation&, const HopReservation&) = default;
};

struct PathReservation {
  std::vector<HopReservation> hops;
  int injection_slot = 0;
  int delivery_slot = 0;  // slot at whose start the destination holds the data
  double predicted_cost = 0.0;  // mW*s

  friend bool operator==(const PathReservation&, const PathReservation&) = default;

  double predicted_cost_db() const { return InterferenceCost{predicted_cost}.db(); }
  // Number of hops whose airborne transmitter held the data for at least one
  // full slot before forwarding it.
  int carry_intervals() const;
  std::vector<NodeId> route() const;
};

// Machine check of the reservation invariants, independent of the planner.
// Returns an empty string when valid.
std::string check_reservation(const PathReservation& r, NodeId source, NodeId dest,
                              int deadline_slots, double p_max_dbm);

// (node, slot) pairs already committed to earlier transmissions. A node takes
// part in at most one transmission per slot.
class Occupancy {
 public:
  bool busy(NodeId node, int slot) const { return busy_.count({node, slot}) != 0; }
  void mark(NodeId node, int slot) { busy_.insert({node, slot}); }
  void mark_transmission(NodeId tx, NodeId rx, int slot) {
    mark(tx, slot);
    mark(rx, slot);
  }
  std::size_t size() const { return busy_.size(); }

 private:
  std::set<std::pair<NodeId, int>> busy_;
};

enum class PlanObjective {
  kInterference,  // minimize predicted interference cost
  kDelay,         // minimize delivery time (every slot advanced costs dt)
};

struct ReserveOptions {
  int injection_slot = 0;
  PlanObjective objective = PlanObjective::kInterference;
  // Half-width of each hop's tactical window around its planned slot.
  int tactical_slack_slots = 0;
  const Occupancy* occupancy = nullptr;
};

// Minimum-cost schedule on the time-expanded graph. Transmit edges
// (i, t) -> (j, t+1) exist when the link is in range at slot t and its
// outage-compliant power is within p_max; carry edges (i, t) -> (i, t+1) cost
// nothing. Ties: fewer hops, earlier delivery, lexicographic node ids, then
// lexicographic transmit slots. Throws NoFeasiblePath.
PathReservation reserve_path(const ChannelGraph& graph, const InterferenceTable& table,
                             NodeId source, NodeId dest, double deadline_s,
                             const LinkBudget& budget, const ReserveOptions& options = {});

// Builds the interference table from the graph's map and the given nodes.
PathReservation reserve_path(const ChannelGraph& graph, const RadioMap& map, NodeId source,
                             NodeId dest, double deadline_s,
                             std::span<const GroundNode> sensitive_nodes, const LinkBudget& budget,
                             const ReserveOptions& options = {});

}  // namespace aeris
