#include "aeris/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "aeris/error.hpp"
#include "aeris/random.hpp"
#include "aeris/tactical.hpp"
#include "json.hpp"

namespace aeris {

using nlohmann::json;

namespace {

// Static pairs among ground nodes, one orientation each.
std::vector<ChannelSample> ground_pair_samples(std::span<const GroundNode> ground,
                                               const GroundTruthChannel& truth) {
  std::vector<ChannelSample> out;
  for (std::size_t a = 0; a < ground.size(); ++a) {
    for (std::size_t b = a + 1; b < ground.size(); ++b) {
      const auto& p = ground[a].pos;
      const auto& q = ground[b].pos;
      if (p == q) continue;
      out.push_back({p, q, truth.gain_db(p, q), truth.los(p, q)});
    }
  }
  return out;
}

void append(std::vector<ChannelSample>& dst, std::vector<ChannelSample>&& src) {
  dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
}

}  // namespace

World build_world(const ScenarioConfig& config, std::uint64_t seed) {
  config.validate();
  World w;
  w.config = config;
  w.seed = seed;
  try {
    w.scene = config.scene ? *config.scene : gen_city(config.city, derive_seed(seed, Stream::kCity));
  } catch (const InvalidArgument& e) {
    throw ConfigInvalid(std::string("city: ") + e.what());
  }
  w.plans = config.trajectories
                ? *config.trajectories
                : gen_routes(w.scene, config.aircraft, config.grid, derive_seed(seed, Stream::kCity, {1}));
  w.terminals = w.scene.terminals();
  w.ground = w.terminals;
  w.ground.insert(w.ground.end(), w.scene.sensitive_nodes.begin(), w.scene.sensitive_nodes.end());
  for (const auto& p : w.plans) {
    for (const auto& g : w.ground) {
      if (g.id == p.aircraft_id) {
        throw ConfigInvalid("trajectories: aircraft id " + std::to_string(p.aircraft_id) +
                            " clashes with a ground node");
      }
    }
  }

  const SlotGrid& grid = config.grid;
  for (const auto& p : w.plans) w.flown.push_back(realize(p, config.deviation, grid, seed));
  w.truth = std::make_shared<GroundTruthChannel>(w.scene, config.pathloss, derive_seed(seed, Stream::kShadow));

  std::vector<Position3> peers;
  for (const auto& g : w.ground) peers.push_back(g.pos);
  const auto& mp = config.maps;
  const double t_begin = grid.t0 - 0.5 * mp.history_period_s;
  const double t_end = grid.end_time();

  // Central map: one earlier pass over the same routes, sampled coarsely.
  std::vector<RealizedPath> earlier;
  std::vector<RealizedPath> recent;
  for (const auto& p : w.plans) {
    earlier.push_back(realize(p, config.deviation, grid, derive_seed(seed, Stream::kHistory, {1})));
    recent.push_back(realize(p, config.deviation, grid, derive_seed(seed, Stream::kHistory, {2})));
  }
  std::vector<ChannelSample> central = ground_pair_samples(w.ground, *w.truth);
  append(central, sample_along(w.plans, earlier, *w.truth, t_begin, t_end, mp.history_period_s, peers));
  append(central, sample_aircraft_pairs(w.plans, earlier, *w.truth, t_begin, t_end, mp.history_period_s));

  // Local map: the central samples plus a more recent, denser pass.
  std::vector<ChannelSample> local = central;
  const double f_begin = grid.t0 - 0.5 * mp.fresh_period_s;
  append(local, sample_along(w.plans, recent, *w.truth, f_begin, t_end, mp.fresh_period_s, peers));
  append(local, sample_aircraft_pairs(w.plans, recent, *w.truth, f_begin, t_end, mp.fresh_period_s));

  w.central_map = build_map(std::move(central), mp.idw_exponent, mp.k_neighbors, grid.t0,
                            mp.central_residual_std_db);
  w.local_map = build_map(std::move(local), mp.idw_exponent, mp.k_neighbors, grid.t0,
                          mp.local_residual_std_db);

  auto graph = std::make_shared<ChannelGraph>(
      synthesize(w.plans, w.terminals, w.central_map, grid, config.planning.range_cutoff_m));
  w.table = std::make_shared<InterferenceTable>(*graph, w.central_map, w.scene.sensitive_nodes);
  w.graph = std::move(graph);
  return w;
}

bool World::is_aircraft(NodeId id) const {
  return std::any_of(plans.begin(), plans.end(), [&](const Trajectory4D& p) { return p.aircraft_id == id; });
}

Position3 World::realized_position(NodeId id, int slot) const {
  for (std::size_t k = 0; k < plans.size(); ++k) {
    if (plans[k].aircraft_id == id) return flown[k].at_slot(slot);
  }
  for (const auto& g : ground) {
    if (g.id == id) return g.pos;
  }
  throw UnknownNode("node " + std::to_string(id));
}

std::vector<NodeId> World::relay_nodes() const {
  std::vector<NodeId> out;
  for (const auto& p : plans) out.push_back(p.aircraft_id);
  for (const auto& g : terminals) out.push_back(g.id);
  return out;
}

double World::interference(NodeId tx, int slot, double power_dbm) const {
  const Position3 p = realized_position(tx, slot);
  double gain_sum = 0.0;
  for (const auto& g : scene.sensitive_nodes) gain_sum += db_to_linear(truth->gain_db(p, g.pos));
  return (db_to_linear(power_dbm) * gain_sum) * config.grid.dt;
}

double World::true_gain_db(NodeId a, NodeId b, int slot) const {
  return truth->gain_db(realized_position(a, slot), realized_position(b, slot));
}

// ---------------------------------------------------------------- event log

std::string EventLog::to_jsonl() const {
  std::ostringstream os;
  for (const auto& t : transmissions) {
    json j{{"type", "tx"},       {"flow", t.flow},         {"hop", t.hop},
           {"slot", t.slot},     {"tx", t.tx},             {"rx", t.rx},
           {"power_dbm", t.power_dbm}, {"revision", t.revision}, {"outage", t.outage}};
    os << j.dump() << '\n';
  }
  for (const auto& o : outcomes) {
    json j{{"type", "outcome"},
           {"flow", o.flow},
           {"delivered", o.delivered},
           {"injection_slot", o.injection_slot},
           {"delivery_slot", o.delivery_slot},
           {"reason", o.reason}};
    os << j.dump() << '\n';
  }
  return os.str();
}

EventLog EventLog::from_jsonl(const std::string& text) {
  EventLog log;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "tx") {
        Transmission t;
        t.flow = j.at("flow").get<int>();
        t.hop = j.at("hop").get<int>();
        t.slot = j.at("slot").get<int>();
        t.tx = j.at("tx").get<NodeId>();
        t.rx = j.at("rx").get<NodeId>();
        t.power_dbm = j.at("power_dbm").get<double>();
        t.revision = j.at("revision").get<int>();
        t.outage = j.at("outage").get<bool>();
        log.transmissions.push_back(t);
      } else if (type == "outcome") {
        FlowOutcome o;
        o.flow = j.at("flow").get<int>();
        o.delivered = j.at("delivered").get<bool>();
        o.injection_slot = j.at("injection_slot").get<int>();
        o.delivery_slot = j.at("delivery_slot").get<int>();
        o.reason = j.at("reason").get<std::string>();
        log.outcomes.push_back(o);
      } else {
        throw InvalidArgument("unknown event type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw InvalidArgument("event log line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return log;
}

// ---------------------------------------------------------------- metrics

namespace {

struct Accumulator {
  double interference = 0.0;
  double energy_mj = 0.0;  // of delivered flows
  double delay_s = 0.0;
  int flows = 0;
  int delivered = 0;
};

MethodMetrics finalize(Method m, const Accumulator& acc) {
  MethodMetrics out;
  out.method = m;
  out.interference_mw_s = acc.interference;
  out.interference_db = acc.interference > 0 ? linear_to_db(acc.interference)
                                             : -std::numeric_limits<double>::infinity();
  out.flows = acc.flows;
  out.delivered = acc.delivered;
  out.delivery_rate = acc.flows > 0 ? static_cast<double>(acc.delivered) / acc.flows : 0.0;
  out.mean_delay_s = acc.delivered > 0 ? acc.delay_s / acc.delivered : 0.0;
  out.energy_mj = acc.delivered > 0 ? acc.energy_mj / acc.delivered : 0.0;
  return out;
}

}  // namespace

MetricsReport replay(const World& world, Method method, const EventLog& log) {
  const double dt = world.config.grid.dt;
  std::map<int, double> energy;
  Accumulator acc;
  for (const auto& t : log.transmissions) {
    acc.interference += world.interference(t.tx, t.slot, t.power_dbm);
    energy[t.flow] += db_to_linear(t.power_dbm) * dt;
  }
  for (const auto& o : log.outcomes) {
    ++acc.flows;
    if (!o.delivered) continue;
    ++acc.delivered;
    acc.delay_s += (o.delivery_slot - o.injection_slot) * dt;
    acc.energy_mj += energy[o.flow];
  }
  MetricsReport r;
  r.load_per_min = world.config.traffic.load_per_min;
  r.seed = world.seed;
  r.methods.push_back(finalize(method, acc));
  return r;
}

// ---------------------------------------------------------------- baselines

SnapshotRoute baseline_aggregate(const World& world, NodeId source, NodeId dest, int slot) {
  const auto& budget = world.config.budget;
  const double g_min = min_feasible_gain_db(budget);
  const double cutoff = world.config.planning.range_cutoff_m;
  std::vector<NodeId> nodes = world.relay_nodes();
  std::sort(nodes.begin(), nodes.end());
  std::map<NodeId, Position3> pos;
  for (NodeId n : nodes) pos[n] = world.realized_position(n, slot);
  if (!pos.count(source) || !pos.count(dest)) throw UnknownNode("flow endpoint not a relay node");

  std::map<NodeId, NodeId> parent;
  std::map<NodeId, double> link_gain;
  std::deque<NodeId> frontier{source};
  parent[source] = source;
  while (!frontier.empty() && !parent.count(dest)) {
    const NodeId u = frontier.front();
    frontier.pop_front();
    for (NodeId v : nodes) {
      if (parent.count(v)) continue;
      if (distance(pos[u], pos[v]) > cutoff) continue;
      const double g = world.truth->gain_db(pos[u], pos[v]);
      if (g < g_min) continue;
      parent[v] = u;
      link_gain[v] = g;
      frontier.push_back(v);
    }
  }
  if (!parent.count(dest)) {
    throw NoFeasiblePath("snapshot at slot " + std::to_string(slot) + " disconnects " +
                         std::to_string(source) + " from " + std::to_string(dest));
  }
  SnapshotRoute r;
  for (NodeId v = dest; v != source; v = parent[v]) {
    r.nodes.push_back(v);
    r.powers_dbm.push_back(required_power_dbm(link_gain[v], budget));
  }
  r.nodes.push_back(source);
  std::reverse(r.nodes.begin(), r.nodes.end());
  std::reverse(r.powers_dbm.begin(), r.powers_dbm.end());
  return r;
}

PathReservation baseline_spacetime(const World& world, const FlowRequest& flow, const Occupancy* occupancy) {
  ReserveOptions opt;
  opt.injection_slot = flow.injection_slot;
  opt.objective = PlanObjective::kDelay;
  opt.occupancy = occupancy;
  return reserve_path(*world.graph, *world.table, flow.source, flow.dest, flow.deadline_s,
                      world.config.budget, opt);
}

// ---------------------------------------------------------------- run

namespace {

class Runner {
 public:
  Runner(const World& world, Method method) : w_(world), method_(method), budget_(world.config.budget) {}

  RunResult execute(double load) {
    ScenarioConfig cfg = w_.config;
    cfg.traffic.load_per_min = load;
    const auto flows = gen_flows(cfg, w_.scene, w_.seed);
    for (const auto& f : flows) {
      flow_energy_ = 0.0;
      tx_index_ = 0;
      FlowOutcome o;
      o.flow = f.id;
      o.injection_slot = f.injection_slot;
      switch (method_) {
        case Method::kPredictive: run_predictive(f, o); break;
        case Method::kBaselineAggregate: run_aggregate(f, o); break;
        case Method::kBaselineSpacetime: run_spacetime(f, o); break;
      }
      ++acc_.flows;
      if (o.delivered) {
        ++acc_.delivered;
        acc_.delay_s += (o.delivery_slot - o.injection_slot) * w_.config.grid.dt;
        acc_.energy_mj += flow_energy_;
      }
      result_.log.outcomes.push_back(std::move(o));
    }
    result_.report.load_per_min = load;
    result_.report.seed = w_.seed;
    result_.report.methods.push_back(finalize(method_, acc_));
    return std::move(result_);
  }

 private:
  int last_slot(const FlowRequest& f) const {
    const auto& grid = w_.config.grid;
    return std::min(f.injection_slot + grid.slots_for(f.deadline_s) - 1, grid.n_slots - 1);
  }

  bool busy(NodeId a, NodeId b, int slot) const { return occ_.busy(a, slot) || occ_.busy(b, slot); }

  // Transmits and accounts; returns false on outage.
  bool transmit(const FlowRequest& f, NodeId tx, NodeId rx, int slot, double power_dbm, double gain_db,
                int revision) {
    Rng rng = make_rng(w_.seed, Stream::kFading,
                       {static_cast<std::uint64_t>(f.id), static_cast<std::uint64_t>(tx_index_)});
    const double h = std::exponential_distribution<double>(1.0)(rng);
    const double snr_db = power_dbm + gain_db + linear_to_db(h) - budget_.noise_dbm;
    const bool outage = snr_db < budget_.snr_threshold_db;
    Transmission t{f.id, tx_index_, slot, tx, rx, power_dbm, revision, outage};
    result_.log.transmissions.push_back(t);
    acc_.interference += w_.interference(tx, slot, power_dbm);
    flow_energy_ += db_to_linear(power_dbm) * w_.config.grid.dt;
    occ_.mark_transmission(tx, rx, slot);
    ++tx_index_;
    return !outage;
  }

  // Local-tier mean forecast: realized offsets at `now_slot` decayed along the
  // plans, gains from the fresh map.
  Position3 extrapolate(NodeId id, int now_slot, int slot) const {
    const auto& grid = w_.config.grid;
    for (std::size_t k = 0; k < w_.plans.size(); ++k) {
      if (w_.plans[k].aircraft_id != id) continue;
      const double lead = std::max(0.0, (slot - now_slot) * grid.dt);
      const double decay = std::exp(-w_.config.deviation.reversion_rate * lead);
      Position3 p = position_at(w_.plans[k], grid.time(slot)) + decay * w_.flown[k].offsets[now_slot];
      p.z = std::max(0.0, p.z);
      return p;
    }
    return w_.realized_position(id, now_slot);
  }

  SlotForecastFn local_forecast(int now_slot) const {
    return [this, now_slot](NodeId a, NodeId b, int slot) {
      if (!w_.config.grid.contains(slot)) return std::numeric_limits<double>::quiet_NaN();
      return w_.local_map.query(extrapolate(a, now_slot, slot), extrapolate(b, now_slot, slot)).mean_gain_db;
    };
  }

  InterferenceFn predicted_interference() const {
    return [this](NodeId tx, int slot, double p) {
      return w_.table->cost(w_.graph->index_of(tx), slot, p, w_.config.grid.dt);
    };
  }

  LocalCluster cluster_around(NodeId center, int slot) const {
    LocalCluster c;
    const Position3 o = w_.realized_position(center, slot);
    for (NodeId n : w_.relay_nodes()) {
      const Position3 p = w_.realized_position(n, slot);
      if (n == center || distance(o, p) <= w_.config.planning.local_radius_m) {
        c.members.push_back(n);
        c.positions[n] = p;
      }
    }
    return c;
  }

  void run_predictive(const FlowRequest& f, FlowOutcome& o) {
    const auto& grid = w_.config.grid;
    const int last = last_slot(f);
    const double g_min = min_feasible_gain_db(budget_);
    ReserveOptions opt;
    opt.injection_slot = f.injection_slot;
    opt.objective = PlanObjective::kInterference;
    opt.tactical_slack_slots = w_.config.planning.tactical_slack_slots;
    opt.occupancy = &occ_;
    std::vector<TimedHop> hops;
    try {
      hops = timed_hops(reserve_path(*w_.graph, *w_.table, f.source, f.dest, f.deadline_s, budget_, opt));
    } catch (const NoFeasiblePath&) {
      o.reason = "no_path";
      return;
    }

    int revision = 0;
    int cur = f.injection_slot;
    int escalated_at = -1;
    std::size_t k = 0;
    while (k < hops.size()) {
      TimedHop& hop = hops[k];
      hop.window.start = std::max(hop.window.start, cur);
      hop.window.end = std::max(hop.window.end, hop.window.start);
      if (hop.window.start > last) {
        o.reason = "deadline";
        return;
      }
      hop.window.end = std::min(hop.window.end, last);
      const int now = hop.window.start;
      const SlotForecastFn forecast = local_forecast(now);

      if (escalated_at != now && detect_blockage(forecast, hop, g_min)) {
        LocalCluster cluster = cluster_around(hop.tx, now);
        cluster.members.push_back(hop.rx);
        std::sort(cluster.members.begin(), cluster.members.end());
        cluster.members.erase(std::unique(cluster.members.begin(), cluster.members.end()),
                              cluster.members.end());
        cluster.block(hop.tx, hop.rx);
        std::vector<TimedHop> rest(hops.begin() + k, hops.end());
        try {
          const Detour d = reroute_local(cluster, rest, 0, forecast, predicted_interference(), budget_);
          hops.erase(hops.begin() + k, hops.begin() + k + d.replaced_count);
          hops.insert(hops.begin() + k, d.hops.begin(), d.hops.end());
        } catch (const EscalateToStrategic&) {
          ReserveOptions re = opt;
          re.injection_slot = now;
          const double remaining_s = (last + 1 - now) * grid.dt;
          std::vector<TimedHop> fresh;
          try {
            fresh = timed_hops(reserve_path(*w_.graph, *w_.table, hop.tx, f.dest, remaining_s, budget_, re));
          } catch (const NoFeasiblePath&) {
            o.reason = "blocked";
            return;
          }
          hops.erase(hops.begin() + k, hops.end());
          hops.insert(hops.end(), fresh.begin(), fresh.end());
        }
        ++revision;
        escalated_at = now;
        continue;
      }

      // Tactical timing inside the window, then slot-by-slot operational
      // decisions; a deferral moves to the next slot.
      int slot = hop.window.start;
      try {
        slot = schedule_timing({hop}, forecast, last, budget_).slots.front();
      } catch (const InfeasibleSchedule&) {
      }
      // Slots after the preferred one, then earlier ones left in the window,
      // then anything up to the deadline.
      std::vector<int> order;
      for (int s = slot; s <= hop.window.end; ++s) order.push_back(s);
      for (int s = hop.window.start; s < slot; ++s) order.push_back(s);
      for (int s = hop.window.end + 1; s <= last; ++s) order.push_back(s);
      const int reserve_for_rest = static_cast<int>(hops.size() - k - 1);
      bool sent = false;
      for (int s : order) {
        if (s > last - reserve_for_rest) continue;
        if (busy(hop.tx, hop.rx, s)) continue;
        const double g = w_.true_gain_db(hop.tx, hop.rx, s);
        const double p = required_power_dbm(g, budget_);
        const PowerDecision d = cap_power(p, w_.realized_position(hop.tx, s), w_.scene.sensitive_nodes,
                                          w_.config.per_node_cap_dbm, w_.local_map, budget_.p_max_dbm);
        if (d.deferred()) continue;
        if (!transmit(f, hop.tx, hop.rx, s, *d.power_dbm, g, revision)) {
          o.reason = "outage";
          return;
        }
        cur = s + 1;
        sent = true;
        break;
      }
      if (!sent) {
        o.reason = "deadline";
        return;
      }
      ++k;
    }
    o.delivered = true;
    o.delivery_slot = cur;
  }

  void run_aggregate(const FlowRequest& f, FlowOutcome& o) {
    const int last = last_slot(f);
    NodeId holder = f.source;
    for (int s = f.injection_slot; s <= last; ++s) {
      SnapshotRoute r;
      try {
        r = baseline_aggregate(w_, holder, f.dest, s);
      } catch (const NoFeasiblePath&) {
        continue;
      }
      const NodeId next = r.nodes[1];
      if (busy(holder, next, s)) continue;
      const double g = w_.true_gain_db(holder, next, s);
      if (!transmit(f, holder, next, s, r.powers_dbm.front(), g, 0)) {
        o.reason = "outage";
        return;
      }
      holder = next;
      if (holder == f.dest) {
        o.delivered = true;
        o.delivery_slot = s + 1;
        return;
      }
    }
    o.reason = "deadline";
  }

  void run_spacetime(const FlowRequest& f, FlowOutcome& o) {
    PathReservation r;
    try {
      r = baseline_spacetime(w_, f, &occ_);
    } catch (const NoFeasiblePath&) {
      o.reason = "no_path";
      return;
    }
    for (const auto& h : r.hops) {
      const double g = w_.true_gain_db(h.tx, h.rx, h.slot);
      const double p = required_power_dbm(g, budget_);
      if (p > budget_.p_max_dbm) {
        o.reason = "link_lost";
        return;
      }
      if (!transmit(f, h.tx, h.rx, h.slot, p, g, 0)) {
        o.reason = "outage";
        return;
      }
    }
    o.delivered = true;
    o.delivery_slot = r.delivery_slot;
  }

  const World& w_;
  Method method_;
  LinkBudget budget_;
  Occupancy occ_;
  Accumulator acc_;
  RunResult result_;
  double flow_energy_ = 0.0;
  int tx_index_ = 0;
};

}  // namespace

RunResult run(const World& world, Method method) { return Runner(world, method).execute(world.config.traffic.load_per_min); }

RunResult run(const ScenarioConfig& config, Method method, std::uint64_t seed) {
  return run(build_world(config, seed), method);
}

// ---------------------------------------------------------------- sweep

int threads_from_env() {
  if (const char* v = std::getenv("AERIS_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && n >= 1) return static_cast<int>(std::min<long>(n, 1024));
    throw ConfigInvalid("AERIS_THREADS: expected a positive integer, got '" + std::string(v) + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepRow> sweep(const ScenarioConfig& config, const std::vector<double>& loads,
                            const std::vector<Method>& methods, int n_seeds, int threads) {
  if (loads.empty()) throw ConfigInvalid("loads: empty list");
  if (methods.empty()) throw ConfigInvalid("methods: empty list");
  if (n_seeds < 1) throw ConfigInvalid("seeds: must be >= 1");
  for (double l : loads) {
    if (!(l >= 0) || !std::isfinite(l)) throw ConfigInvalid("loads: must be finite and >= 0");
  }
  config.validate();
  if (threads <= 0) threads = threads_from_env();
  threads = std::min(threads, n_seeds);

  const std::size_t per_seed = loads.size() * methods.size();
  std::vector<SweepRow> rows(per_seed * n_seeds);
  std::atomic<int> next{0};
  std::mutex err_mu;
  std::exception_ptr error;

  auto worker = [&] {
    while (true) {
      const int s = next.fetch_add(1);
      if (s >= n_seeds) return;
      try {
        const auto seed = static_cast<std::uint64_t>(s + 1);
        World world = build_world(config, seed);
        for (std::size_t li = 0; li < loads.size(); ++li) {
          for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            RunResult r = Runner(world, methods[mi]).execute(loads[li]);
            SweepRow& row = rows[(li * methods.size() + mi) * n_seeds + s];
            row.load = loads[li];
            row.method = methods[mi];
            row.seed = seed;
            row.metrics = r.report.methods.front();
          }
        }
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!error) error = std::current_exception();
        next.store(n_seeds);
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return rows;
}

}  // namespace aeris
