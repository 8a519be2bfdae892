#include "aeris/tactical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <tuple>

#include "aeris/error.hpp"

namespace aeris {

namespace {

std::pair<NodeId, NodeId> ordered(NodeId a, NodeId b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

std::vector<TimedHop> timed_hops(const PathReservation& reservation) {
  std::vector<TimedHop> out;
  out.reserve(reservation.hops.size());
  for (const auto& h : reservation.hops) out.push_back({h.tx, h.rx, h.window});
  return out;
}

bool LocalCluster::is_member(NodeId id) const {
  return std::find(members.begin(), members.end(), id) != members.end();
}

bool LocalCluster::is_blocked(NodeId a, NodeId b) const { return blocked.count(ordered(a, b)) != 0; }

void LocalCluster::block(NodeId a, NodeId b) { blocked.insert(ordered(a, b)); }

void LocalCluster::validate() const {
  for (const auto& [a, b] : blocked) {
    if (!is_member(a) || !is_member(b)) {
      throw InvalidArgument("blocked pair (" + std::to_string(a) + "," + std::to_string(b) +
                            ") outside the cluster");
    }
  }
}

bool detect_blockage(const SlotForecastFn& forecast, const TimedHop& hop, double gain_threshold_db) {
  if (hop.window.end < hop.window.start) throw InvalidArgument("hop window inverted");
  double best = kNegInf;
  for (int t = hop.window.start; t <= hop.window.end; ++t) {
    const double g = forecast(hop.tx, hop.rx, t);
    if (!std::isnan(g)) best = std::max(best, g);
  }
  return best < gain_threshold_db;
}

bool detect_blockage(const EchelonView& view, const WorldView& world, const SlotGrid& grid,
                     const TimedHop& hop, double gain_threshold_db) {
  if (view.tier != Tier::kLocal) throw InvalidArgument("blockage detection needs a local view");
  SlotForecastFn fn = [&](NodeId a, NodeId b, int slot) {
    try {
      return forecast_gain(view, world, a, b, grid.time(slot)).mean_db;
    } catch (const OutOfRange&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  return detect_blockage(fn, hop, gain_threshold_db);
}

Schedule schedule_timing(const std::vector<TimedHop>& route, const SlotForecastFn& forecast,
                         int deadline_slot, const LinkBudget& budget) {
  Schedule out;
  if (route.empty()) return out;
  for (std::size_t k = 0; k + 1 < route.size(); ++k) {
    if (route[k].rx != route[k + 1].tx) throw InvalidArgument("route hops do not chain");
  }
  const double g_min = min_feasible_gain_db(budget);
  const std::size_t n = route.size();

  // Candidate slots and gains per hop.
  std::vector<std::vector<int>> slots(n);
  std::vector<std::vector<double>> gains(n);
  for (std::size_t k = 0; k < n; ++k) {
    const int lo = route[k].window.start;
    const int hi = std::min(route[k].window.end, deadline_slot);
    for (int t = lo; t <= hi; ++t) {
      const double g = forecast(route[k].tx, route[k].rx, t);
      if (std::isnan(g) || g < g_min) continue;
      slots[k].push_back(t);
      gains[k].push_back(g);
    }
  }

  // best[k][a]: best total of hops k..n-1 with hop k at slots[k][a];
  // pick[k][a]: chosen candidate of hop k+1 (earliest among maxima).
  std::vector<std::vector<double>> best(n);
  std::vector<std::vector<int>> pick(n);
  for (std::size_t kk = n; kk-- > 0;) {
    best[kk].assign(slots[kk].size(), kNegInf);
    pick[kk].assign(slots[kk].size(), -1);
    for (std::size_t a = 0; a < slots[kk].size(); ++a) {
      if (kk + 1 == n) {
        best[kk][a] = gains[kk][a];
        continue;
      }
      double tail = kNegInf;
      int arg = -1;
      for (std::size_t b = 0; b < slots[kk + 1].size(); ++b) {
        if (slots[kk + 1][b] <= slots[kk][a]) continue;
        if (best[kk + 1][b] > tail) {
          tail = best[kk + 1][b];
          arg = static_cast<int>(b);
        }
      }
      if (arg >= 0) {
        best[kk][a] = gains[kk][a] + tail;
        pick[kk][a] = arg;
      }
    }
  }

  int arg = -1;
  double top = kNegInf;
  for (std::size_t a = 0; a < best[0].size(); ++a) {
    if (best[0][a] > top) {
      top = best[0][a];
      arg = static_cast<int>(a);
    }
  }
  if (arg < 0) throw InfeasibleSchedule("no slot assignment meets windows, precedence and deadline");

  out.route.push_back(route.front().tx);
  for (std::size_t k = 0; k < n; ++k) {
    out.route.push_back(route[k].rx);
    out.slots.push_back(slots[k][arg]);
    out.total_gain_db += gains[k][arg];
    if (k + 1 < n) arg = pick[k][arg];
  }
  return out;
}

std::string check_schedule(const Schedule& schedule, const std::vector<TimedHop>& route,
                           int deadline_slot) {
  if (schedule.slots.size() != route.size()) return "slot count differs from hop count";
  if (schedule.route.size() != route.size() + (route.empty() ? 0 : 1)) return "route length mismatch";
  for (std::size_t k = 0; k < route.size(); ++k) {
    const int s = schedule.slots[k];
    if (schedule.route[k] != route[k].tx || schedule.route[k + 1] != route[k].rx)
      return "route differs from hops";
    if (s < route[k].window.start || s > route[k].window.end) return "slot outside window";
    if (s > deadline_slot) return "slot after deadline";
    if (k > 0 && s <= schedule.slots[k - 1]) return "precedence violated";
  }
  return "";
}

namespace {

struct Candidate {
  std::vector<TimedHop> hops;
  double interference = 0.0;
  NodeId relay = std::numeric_limits<NodeId>::min();
};

// Best timing of a candidate and its predicted interference; nullopt when no
// feasible timing exists.
std::optional<double> candidate_cost(const std::vector<TimedHop>& hops, const SlotForecastFn& forecast,
                                     const InterferenceFn& interference, const LinkBudget& budget) {
  Schedule s;
  try {
    s = schedule_timing(hops, forecast, hops.back().window.end, budget);
  } catch (const InfeasibleSchedule&) {
    return std::nullopt;
  }
  double total = 0.0;
  for (std::size_t k = 0; k < hops.size(); ++k) {
    const double g = forecast(hops[k].tx, hops[k].rx, s.slots[k]);
    total += interference(hops[k].tx, s.slots[k], required_power_dbm(g, budget));
  }
  return total;
}

}  // namespace

Detour reroute_local(const LocalCluster& cluster, const std::vector<TimedHop>& directive,
                     std::size_t blocked_hop, const SlotForecastFn& forecast,
                     const InterferenceFn& interference, const LinkBudget& budget) {
  if (blocked_hop >= directive.size()) throw OutOfRange("blocked hop index out of range");
  cluster.validate();
  const TimedHop& hop = directive[blocked_hop];
  Detour out;
  out.first_replaced = blocked_hop;
  if (!cluster.is_blocked(hop.tx, hop.rx)) {
    out.hops = {hop};
    out.replaced_count = 1;
    return out;
  }

  const bool last = blocked_hop + 1 == directive.size();
  const NodeId a = hop.tx;
  const NodeId b = hop.rx;
  const NodeId target = last ? b : directive[blocked_hop + 1].rx;
  const SlotWindow span{hop.window.start, last ? hop.window.end : directive[blocked_hop + 1].window.end};
  out.replaced_count = last ? 1 : 2;

  std::vector<Candidate> candidates;
  if (!last && !cluster.is_blocked(a, target)) {
    candidates.push_back({{{a, target, span}}, 0.0, std::numeric_limits<NodeId>::min()});
  }
  if (span.end > span.start) {
    std::vector<NodeId> relays = cluster.members;
    std::sort(relays.begin(), relays.end());
    for (NodeId m : relays) {
      if (m == a || m == b || m == target) continue;
      if (cluster.is_blocked(a, m) || cluster.is_blocked(m, target)) continue;
      candidates.push_back({{{a, m, {span.start, span.end - 1}}, {m, target, {span.start + 1, span.end}}},
                            0.0,
                            m});
    }
  }

  const Candidate* winner = nullptr;
  for (auto& c : candidates) {
    const auto cost = candidate_cost(c.hops, forecast, interference, budget);
    if (!cost) continue;
    c.interference = *cost;
    if (winner == nullptr ||
        std::tuple(c.interference, c.hops.size(), c.relay) <
            std::tuple(winner->interference, winner->hops.size(), winner->relay)) {
      winner = &c;
    }
  }
  if (winner == nullptr) {
    throw EscalateToStrategic("no local detour around " + std::to_string(a) + "->" +
                              std::to_string(b));
  }
  out.hops = winner->hops;
  out.added_interference = winner->interference;
  return out;
}

}  // namespace aeris
