#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aeris/echelon.hpp"
#include "aeris/geometry.hpp"
#include "aeris/operational.hpp"
#include "aeris/slot_grid.hpp"
#include "aeris/strategic.hpp"

namespace aeris {

// Forecast mean gain (dB) of link (tx, rx) in a slot; NaN when unavailable.
using SlotForecastFn = std::function<double(NodeId tx, NodeId rx, int slot)>;
// Predicted interference (mW*s) of `tx` transmitting in `slot` at `power_dbm`.
using InterferenceFn = std::function<double(NodeId tx, int slot, double power_dbm)>;

struct TimedHop {
  NodeId tx = 0;
  NodeId rx = 0;
  SlotWindow window;
  friend bool operator==(const TimedHop&, const TimedHop&) = default;
};

std::vector<TimedHop> timed_hops(const PathReservation& reservation);

struct LocalCluster {
  std::vector<NodeId> members;
  std::map<NodeId, Position3> positions;  // realized, at the cluster's "now"
  std::set<std::pair<NodeId, NodeId>> blocked;  // unordered pairs stored (min, max)

  bool is_member(NodeId id) const;
  bool is_blocked(NodeId a, NodeId b) const;
  void block(NodeId a, NodeId b);
  // Throws InvalidArgument when a blocked pair involves a non-member.
  void validate() const;
};

struct Schedule {
  std::vector<NodeId> route;  // tx of each hop, then the final rx
  std::vector<int> slots;     // transmit slot per hop
  double total_gain_db = 0.0;
  int revision = 0;           // route revisions applied by the tactical layer
};

// True iff the best forecast mean inside the hop's window is strictly below
// the threshold; a forecast exactly at the threshold is not a blockage.
bool detect_blockage(const SlotForecastFn& forecast, const TimedHop& hop, double gain_threshold_db);

// Local-view variant: forecasts from a local-tier view at the world's "now".
// Throws InvalidArgument for a non-local view.
bool detect_blockage(const EchelonView& view, const WorldView& world, const SlotGrid& grid,
                     const TimedHop& hop, double gain_threshold_db);

struct Detour {
  std::vector<TimedHop> hops;   // replacement hops
  std::size_t first_replaced = 0;
  std::size_t replaced_count = 0;
  double added_interference = 0.0;  // mW*s of the replacement at its best timing
};

// Replaces blocked hop `blocked_hop` (a -> b) of the directive by a detour of
// at most two hops reconnecting to the node after b (or to b itself when it is
// the destination): a -> next, or a -> m -> next through a cluster member m.
// Detour hops use the slots of the replaced windows and must stay feasible at
// p_max under the forecast. The least-interference candidate wins; ties go to
// fewer hops, then the smaller relay id. A hop the cluster does not flag as
// blocked is returned unchanged. Throws EscalateToStrategic when no detour
// exists.
Detour reroute_local(const LocalCluster& cluster, const std::vector<TimedHop>& directive,
                     std::size_t blocked_hop, const SlotForecastFn& forecast,
                     const InterferenceFn& interference, const LinkBudget& budget);

// Chooses one slot per hop maximizing the summed forecast gain subject to
// window membership, strict precedence, the deadline (last slot allowed) and
// per-slot feasibility at p_max. Among optima the lexicographically earliest
// assignment wins. Throws InfeasibleSchedule.
Schedule schedule_timing(const std::vector<TimedHop>& route, const SlotForecastFn& forecast,
                         int deadline_slot, const LinkBudget& budget);

// Machine check of precedence, windows and deadline; empty string when valid.
std::string check_schedule(const Schedule& schedule, const std::vector<TimedHop>& route,
                           int deadline_slot);

}  // namespace aeris
