#include "aeris/strategic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "aeris/error.hpp"

namespace aeris {

InterferenceCost hop_interference(const RadioMap& map, std::span<const Position3> tx_positions,
                                  double power_dbm, SlotWindow window,
                                  std::span<const GroundNode> sensitive_nodes, double dt) {
  if (window.start < 0 || window.end < window.start ||
      static_cast<std::size_t>(window.end) >= tx_positions.size()) {
    throw OutOfRange("interference window outside the position series");
  }
  const double p_lin = db_to_linear(power_dbm);
  InterferenceCost cost;
  if (p_lin == 0.0) return cost;
  for (int t = window.start; t <= window.end; ++t) {
    double gain_sum = 0.0;
    for (const auto& g : sensitive_nodes) {
      gain_sum += db_to_linear(map.query(tx_positions[t], g.pos).mean_gain_db);
    }
    cost.value += (p_lin * gain_sum) * dt;
  }
  return cost;
}

InterferenceTable::InterferenceTable(const ChannelGraph& graph, const RadioMap& map,
                                     std::span<const GroundNode> sensitive_nodes)
    : n_slots_(graph.grid().n_slots) {
  const auto n = graph.node_count();
  sums_.assign(n * static_cast<std::size_t>(n_slots_), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const int idx = static_cast<int>(i);
    for (int t = 0; t < n_slots_; ++t) {
      double s = 0.0;
      // Static nodes: reuse slot 0.
      if (t > 0 && !graph.is_aircraft(idx)) {
        s = sums_[i * n_slots_];
      } else {
        const Position3& p = graph.position_at_slot(idx, t);
        for (const auto& g : sensitive_nodes) s += db_to_linear(map.query(p, g.pos).mean_gain_db);
      }
      sums_[i * n_slots_ + t] = s;
    }
  }
}

int PathReservation::carry_intervals() const {
  int carries = 0;
  for (std::size_t k = 1; k < hops.size(); ++k) {
    if (hops[k].tx_airborne && hops[k].slot > hops[k - 1].slot + 1) ++carries;
  }
  return carries;
}

std::vector<NodeId> PathReservation::route() const {
  std::vector<NodeId> r;
  if (hops.empty()) return r;
  r.push_back(hops.front().tx);
  for (const auto& h : hops) r.push_back(h.rx);
  return r;
}

std::string check_reservation(const PathReservation& r, NodeId source, NodeId dest,
                              int deadline_slots, double p_max_dbm) {
  if (r.delivery_slot < r.injection_slot) return "delivery precedes injection";
  if (r.delivery_slot - r.injection_slot > deadline_slots) return "deadline exceeded";
  if (!(r.predicted_cost >= 0.0)) return "negative predicted cost";
  if (r.hops.empty()) return source == dest ? "" : "empty reservation for distinct endpoints";
  if (r.hops.front().tx != source) return "first hop does not start at source";
  if (r.hops.back().rx != dest) return "last hop does not end at destination";
  for (std::size_t k = 0; k < r.hops.size(); ++k) {
    const auto& h = r.hops[k];
    if (h.window.start > h.window.end) return "hop window inverted";
    if (h.slot < h.window.start || h.slot > h.window.end) return "hop slot outside window";
    if (h.window.start < r.injection_slot) return "hop window before injection";
    if (h.nominal_power_dbm > p_max_dbm) return "hop power above p_max";
    if (h.tx == h.rx) return "self hop";
    if (k + 1 < r.hops.size()) {
      if (h.rx != r.hops[k + 1].tx) return "hops do not chain";
      if (!(h.window.end < r.hops[k + 1].window.start)) return "hop windows overlap";
    }
  }
  if (r.hops.back().window.end >= r.injection_slot + deadline_slots)
    return "last window reaches past the deadline";
  if (r.hops.back().slot + 1 != r.delivery_slot) return "delivery slot mismatch";
  return "";
}

namespace {

struct Label {
  bool valid = false;
  double cost = 0.0;
  int hops = 0;
  std::vector<NodeId> nodes;  // route so far, starting at the source
  std::vector<int> slots;     // transmit slot per hop
  std::vector<double> powers;
};

bool better(const Label& a, const Label& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  return std::tie(a.cost, a.hops, a.nodes, a.slots) < std::tie(b.cost, b.hops, b.nodes, b.slots);
}

}  // namespace

PathReservation reserve_path(const ChannelGraph& graph, const InterferenceTable& table,
                             NodeId source, NodeId dest, double deadline_s,
                             const LinkBudget& budget, const ReserveOptions& options) {
  const SlotGrid& grid = graph.grid();
  const int src = graph.index_of(source);
  const int dst = graph.index_of(dest);
  const int inj = options.injection_slot;
  if (!grid.contains(inj)) throw OutOfRange("injection slot outside grid");
  if (!(deadline_s >= grid.dt * (1.0 - 1e-9))) throw InvalidArgument("deadline must be >= dt");
  const int deadline_slots = grid.slots_for(deadline_s);

  PathReservation out;
  out.injection_slot = inj;
  out.delivery_slot = inj;
  if (source == dest) return out;

  const int n = static_cast<int>(graph.node_count());
  const int last_tx_slot = std::min(inj + deadline_slots - 1, grid.n_slots - 1);
  const double p_max = budget.p_max_dbm;
  const bool delay_objective = options.objective == PlanObjective::kDelay;
  auto free = [&](int idx, int t) {
    return options.occupancy == nullptr || !options.occupancy->busy(graph.nodes()[idx], t);
  };

  std::vector<Label> layer(n), next(n);
  layer[src].valid = true;
  layer[src].nodes = {source};

  Label best;
  int best_delivery = -1;
  auto offer_delivery = [&](Label&& cand, int delivery) {
    const bool take =
        !best.valid || std::tie(cand.cost, cand.hops, delivery, cand.nodes, cand.slots) <
                           std::tie(best.cost, best.hops, best_delivery, best.nodes, best.slots);
    if (take) {
      best = std::move(cand);
      best_delivery = delivery;
    }
  };

  // Every edge advances exactly one slot, so the time-expanded graph is a DAG
  // layered by slot; labels of layer t are permanent once layer t is reached.
  for (int t = inj; t <= last_tx_slot; ++t) {
    for (auto& l : next) l.valid = false;
    for (int i = 0; i < n; ++i) {
      const Label& cur = layer[i];
      if (!cur.valid) continue;
      // Carry.
      {
        const double c = delay_objective ? grid.dt : 0.0;
        assert(c >= 0.0);
        Label cand = cur;
        cand.cost += c;
        if (better(cand, next[i])) next[i] = std::move(cand);
      }
      if (!free(i, t)) continue;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double w = graph.weight_at(i, j, t);
        if (std::isnan(w)) continue;
        const double p = required_power_dbm(w, budget);
        if (p > p_max || !free(j, t)) continue;
        const double c = delay_objective ? grid.dt : table.cost(i, t, p, grid.dt);
        assert(c >= 0.0);
        Label cand = cur;
        cand.cost += c;
        cand.hops += 1;
        cand.nodes.push_back(graph.nodes()[j]);
        cand.slots.push_back(t);
        cand.powers.push_back(p);
        if (j == dst) {
          offer_delivery(std::move(cand), t + 1);
        } else if (better(cand, next[j])) {
          next[j] = std::move(cand);
        }
      }
    }
    std::swap(layer, next);
  }

  if (!best.valid) {
    throw NoFeasiblePath("no schedule from " + std::to_string(source) + " to " +
                         std::to_string(dest) + " within " + std::to_string(deadline_s) + " s");
  }

  out.delivery_slot = best_delivery;
  const int k_hops = best.hops;
  out.hops.resize(k_hops);
  double interference = 0.0;
  for (int k = 0; k < k_hops; ++k) {
    auto& h = out.hops[k];
    h.tx = best.nodes[k];
    h.rx = best.nodes[k + 1];
    h.slot = best.slots[k];
    h.nominal_power_dbm = best.powers[k];
    const int tx_idx = graph.index_of(h.tx);
    h.tx_airborne = graph.is_aircraft(tx_idx);
    interference += table.cost(tx_idx, h.slot, h.nominal_power_dbm, grid.dt);
  }
  out.predicted_cost = delay_objective ? interference : best.cost;

  // Tactical windows: disjoint, ordered, each containing its planned slot.
  const int w = std::max(0, options.tactical_slack_slots);
  int prev_end = inj - 1;
  for (int k = 0; k < k_hops; ++k) {
    auto& h = out.hops[k];
    h.window.start = std::max(prev_end + 1, h.slot - w);
    int end = std::min(h.slot + w, last_tx_slot);
    if (k + 1 < k_hops) end = std::min(end, out.hops[k + 1].slot - 1);
    h.window.end = end;
    prev_end = end;
  }
  return out;
}

PathReservation reserve_path(const ChannelGraph& graph, const RadioMap& map, NodeId source,
                             NodeId dest, double deadline_s,
                             std::span<const GroundNode> sensitive_nodes, const LinkBudget& budget,
                             const ReserveOptions& options) {
  const InterferenceTable table(graph, map, sensitive_nodes);
  return reserve_path(graph, table, source, dest, deadline_s, budget, options);
}

}  // namespace aeris
