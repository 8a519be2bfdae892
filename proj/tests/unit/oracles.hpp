#pragma once

// Independent reference implementations shared by the unit tests and the
// acceptance binary. Nothing here calls the code under test except to build
// inputs.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "aeris/channel_graph.hpp"
#include "aeris/operational.hpp"
#include "aeris/radio_env.hpp"
#include "aeris/random.hpp"
#include "aeris/strategic.hpp"
#include "aeris/tactical.hpp"
#include "fixtures.hpp"

namespace oracles {

using namespace aeris;

// Map sampled at every (slot, pair) the graph will ask about, so graph weights
// equal the ground truth at the planned positions.
inline RadioMap perfect_map(std::span<const Trajectory4D> trajs, std::span<const GroundNode> ground,
                            std::span<const GroundNode> sensitive, const GroundTruthChannel& ch,
                            const SlotGrid& grid) {
  std::vector<ChannelSample> s;
  for (int t = 0; t < grid.n_slots; ++t) {
    std::vector<Position3> pos;
    for (const auto& tr : trajs) pos.push_back(position_at(tr, grid.time(t)));
    for (const auto& g : ground) pos.push_back(g.pos);
    for (std::size_t a = 0; a < pos.size(); ++a) {
      for (std::size_t b = a + 1; b < pos.size(); ++b) {
        if (t > 0 && a >= trajs.size()) continue;  // static pairs once
        s.push_back({pos[a], pos[b], ch.gain_db(pos[a], pos[b]), ch.los(pos[a], pos[b])});
      }
      if (t > 0 && a >= trajs.size()) continue;
      for (const auto& g : sensitive) {
        s.push_back({pos[a], g.pos, ch.gain_db(pos[a], g.pos), ch.los(pos[a], g.pos)});
      }
    }
  }
  return build_map(std::move(s));
}

struct StrategicInstance {
  std::vector<Trajectory4D> trajs;
  std::vector<GroundNode> ground;
  std::vector<GroundNode> sensitive;
  ChannelGraph graph;
  InterferenceTable table;
  LinkBudget budget;
  NodeId src = 0;
  NodeId dst = 0;
  double deadline_s = 0;
  int injection_slot = 0;
  Occupancy occupancy;
  bool use_occupancy = false;
};

// At most 5 entities and 8 slots.
inline StrategicInstance random_strategic(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 1 << 30);
  StrategicInstance in;
  const int n_air = 1 + pick(rng) % 3;
  const int n_slots = 4 + pick(rng) % 5;
  const SlotGrid grid{0.0, 1.0, n_slots};
  for (int k = 0; k < n_air; ++k) {
    const Position3 a{600 * u(rng), 600 * u(rng), 60 + 60 * u(rng)};
    const Position3 b{600 * u(rng), 600 * u(rng), 60 + 60 * u(rng)};
    in.trajs.push_back(fixtures::line(k + 1, a, b, 0.0, n_slots));
  }
  in.ground = {{100, {600 * u(rng), 600 * u(rng), 1.5}}, {101, {600 * u(rng), 600 * u(rng), 1.5}}};
  in.sensitive = {{200, {600 * u(rng), 600 * u(rng), 1.5}}, {201, {600 * u(rng), 600 * u(rng), 1.5}}};
  const GroundTruthChannel ch(fixtures::open_scene(), PathLossParams{}, seed);
  const RadioMap map = perfect_map(in.trajs, in.ground, in.sensitive, ch, grid);
  in.graph = synthesize(in.trajs, in.ground, map, grid, 700.0);
  in.table = InterferenceTable(in.graph, map, in.sensitive);

  // p_max at the median required power: roughly half the links usable.
  std::vector<double> req;
  const int n = static_cast<int>(in.graph.node_count());
  for (int t = 0; t < n_slots; ++t)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double w = in.graph.weight_at(i, j, t);
        if (!std::isnan(w)) req.push_back(required_power_dbm(w, in.budget));
      }
  std::sort(req.begin(), req.end());
  if (!req.empty()) in.budget.p_max_dbm = req[req.size() / 2];

  std::vector<NodeId> ids = in.graph.nodes();
  in.src = ids[pick(rng) % ids.size()];
  do in.dst = ids[pick(rng) % ids.size()];
  while (in.dst == in.src);
  in.injection_slot = pick(rng) % 3;
  if (in.injection_slot >= n_slots) in.injection_slot = 0;
  in.deadline_s = 1 + pick(rng) % n_slots;
  in.use_occupancy = pick(rng) % 2 == 0;
  if (in.use_occupancy) {
    for (int k = 0; k < 4; ++k) in.occupancy.mark(ids[pick(rng) % ids.size()], pick(rng) % n_slots);
  }
  return in;
}

// Exhaustive enumeration of holder sequences on the time-expanded graph.
// Costs accumulate in transmission order. nullopt when nothing is feasible.
inline std::optional<double> brute_force_cost(const StrategicInstance& in, PlanObjective obj) {
  const auto& g = in.graph;
  const SlotGrid& grid = g.grid();
  const int src = g.index_of(in.src);
  const int dst = g.index_of(in.dst);
  const int last = std::min(in.injection_slot + grid.slots_for(in.deadline_s) - 1, grid.n_slots - 1);
  const int n = static_cast<int>(g.node_count());
  auto free = [&](int idx, int t) {
    return !in.use_occupancy || !in.occupancy.busy(g.nodes()[idx], t);
  };
  std::optional<double> best;
  std::function<void(int, int, double)> walk = [&](int holder, int t, double cost) {
    if (t > last) return;
    walk(holder, t + 1, cost + (obj == PlanObjective::kDelay ? grid.dt : 0.0));
    if (!free(holder, t)) return;
    for (int j = 0; j < n; ++j) {
      if (j == holder || !free(j, t)) continue;
      const double w = g.weight_at(holder, j, t);
      if (std::isnan(w)) continue;
      const double p = required_power_dbm(w, in.budget);
      if (p > in.budget.p_max_dbm) continue;
      const double c = obj == PlanObjective::kDelay
                           ? grid.dt
                           : (db_to_linear(p) * in.table.gain_sum(holder, t)) * grid.dt;
      if (j == dst) {
        if (!best || cost + c < *best) best = cost + c;
      } else {
        walk(j, t + 1, cost + c);
      }
    }
  };
  walk(src, in.injection_slot, 0.0);
  return best;
}

struct TimingInstance {
  std::vector<TimedHop> route;
  std::vector<std::vector<double>> gain;  // gain[hop][slot], NaN = unavailable
  int deadline_slot = 0;
  LinkBudget budget;
  SlotForecastFn forecast() const {
    return [this](NodeId tx, NodeId, int slot) {
      const auto k = static_cast<std::size_t>(tx);
      return gain[k][slot];
    };
  }
};

// At most 4 hops over at most 12 slots. Hop k goes node k -> node k + 1.
inline TimingInstance random_timing(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 1 << 30);
  TimingInstance in;
  const int n_slots = 4 + pick(rng) % 9;
  const int hops = 1 + pick(rng) % 4;
  const double g_min = min_feasible_gain_db(in.budget);
  in.gain.assign(hops, std::vector<double>(n_slots));
  for (int k = 0; k < hops; ++k) {
    int a = pick(rng) % n_slots, b = pick(rng) % n_slots;
    if (a > b) std::swap(a, b);
    in.route.push_back({k, k + 1, {a, b}});
    for (int t = 0; t < n_slots; ++t) {
      const double r = u(rng);
      if (r < 0.1) in.gain[k][t] = std::numeric_limits<double>::quiet_NaN();
      else if (r < 0.25) in.gain[k][t] = g_min - 5 * u(rng);
      // Integer gains create ties on purpose.
      else if (r < 0.5) in.gain[k][t] = g_min + std::floor(10 * u(rng));
      else in.gain[k][t] = g_min + 20 * u(rng);
    }
  }
  in.deadline_slot = pick(rng) % (n_slots + 2);
  return in;
}

struct TimingAnswer {
  std::vector<int> slots;
  double total = 0.0;
};

// Enumerates every slot vector in lexicographic order; the first maximum wins.
inline std::optional<TimingAnswer> brute_force_timing(const TimingInstance& in) {
  const double g_min = min_feasible_gain_db(in.budget);
  const std::size_t n = in.route.size();
  std::optional<TimingAnswer> best;
  double best_val = -std::numeric_limits<double>::infinity();
  std::vector<int> cur(n);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      // Right fold, matching the association of a backward recursion.
      double v = in.gain[n - 1][cur[n - 1]];
      for (std::size_t j = n - 1; j-- > 0;) v = in.gain[j][cur[j]] + v;
      if (!best || v > best_val) {
        best_val = v;
        best = TimingAnswer{cur, 0.0};
        for (std::size_t j = 0; j < n; ++j) best->total += in.gain[j][cur[j]];
      }
      return;
    }
    const auto& w = in.route[k].window;
    for (int t = w.start; t <= w.end; ++t) {
      if (t > in.deadline_slot) break;
      if (k > 0 && t <= cur[k - 1]) continue;
      const double g = in.gain[k][t];
      if (std::isnan(g) || g < g_min) continue;
      cur[k] = t;
      rec(k + 1);
    }
  };
  rec(0);
  return best;
}

// Bisection on the outage probability, monotone decreasing in power.
inline double bisect_power(double mean_gain_db, const LinkBudget& b) {
  double lo = -300.0, hi = 300.0;
  auto outage = [&](double p_dbm) {
    const double snr_mean = std::pow(10.0, (p_dbm + mean_gain_db - b.noise_dbm) / 10.0);
    const double gamma = std::pow(10.0, b.snr_threshold_db / 10.0);
    return -std::expm1(-gamma / snr_mean);
  };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (outage(mid) > b.outage_eps) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Corridor: a ground source and destination 400 m apart, five hovering relays
// 70 m apart on the line between them and one ferry flying east on a parallel
// track. At 10 dBm the usable range is about 100 m, so the ferry is out of
// reach of the source for the first 3 s. Sensitive receivers sit under the
// relay chain.
struct Corridor {
  std::vector<Trajectory4D> trajs;
  std::vector<GroundNode> ground;
  std::vector<GroundNode> sensitive;
  ChannelGraph graph;
  InterferenceTable table;
  LinkBudget budget;
  static constexpr NodeId kSource = 100;
  static constexpr NodeId kDest = 101;
  static constexpr NodeId kFerry = 9;
};

inline Corridor corridor(std::uint64_t shadow_seed) {
  Corridor c;
  const SlotGrid grid{0.0, 0.1, 250};
  const double end = grid.end_time() + 1.0;
  for (int k = 0; k < 5; ++k) c.trajs.push_back(fixtures::hover(k + 1, {310.0 + 70 * k, 200, 60}, end));
  c.trajs.push_back(fixtures::line(Corridor::kFerry, {100, 260, 60}, {100 + 30 * end, 260, 60}, 0.0, end));
  c.ground = {{Corridor::kSource, {250, 200, 1.5}}, {Corridor::kDest, {650, 200, 1.5}}};
  c.sensitive = {{200, {350, 150, 1.5}}, {201, {500, 150, 1.5}}};
  c.budget.p_max_dbm = 10.0;
  PathLossParams pl;
  pl.sigma_sh_los_db = 1.0;
  pl.sigma_sh_nlos_db = 1.0;
  const GroundTruthChannel ch(fixtures::open_scene(), pl, shadow_seed);
  const RadioMap map = perfect_map(c.trajs, c.ground, c.sensitive, ch, grid);
  c.graph = synthesize(c.trajs, c.ground, map, grid, 700.0);
  c.table = InterferenceTable(c.graph, map, c.sensitive);
  return c;
}

// Aircraft at 100 m over a 500 m square, five fixed ground receivers.
inline std::vector<ChannelSample> synthetic_samples(const GroundTruthChannel& ch, int n,
                                                    std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<Position3> rx{{100, 100, 1.5}, {300, 250, 1.5}, {200, 400, 1.5}, {450, 50, 1.5}, {50, 300, 1.5}};
  std::vector<ChannelSample> out;
  for (int k = 0; k < n; ++k) {
    const Position3 tx{500 * u(rng), 500 * u(rng), 100.0};
    const Position3 r = rx[k % rx.size()];
    out.push_back({tx, r, ch.gain_db(tx, r), ch.los(tx, r)});
  }
  return out;
}

// Nodes 2, 5, 6, 7 with directive 2 -> 6 -> 7 and the pair 2-6 blocked. The
// direct link 2 -> 7 is out of reach; every other link is good.
struct Fig4c {
  LocalCluster cluster;
  std::vector<TimedHop> directive{{2, 6, {0, 4}}, {6, 7, {5, 9}}};
  LinkBudget budget;
  std::map<std::pair<NodeId, NodeId>, double> gains;
  SlotForecastFn forecast() const {
    return [this](NodeId a, NodeId b, int) {
      auto it = gains.find({std::min(a, b), std::max(a, b)});
      return it == gains.end() ? -80.0 : it->second;
    };
  }
  Fig4c() {
    cluster.members = {2, 5, 6, 7};
    cluster.block(2, 6);
    gains[{2, 7}] = min_feasible_gain_db(budget) - 10.0;
  }
};

inline InterferenceFn power_interference() {
  return [](NodeId, int, double p) { return std::pow(10.0, p / 10.0); };
}

}  // namespace oracles
