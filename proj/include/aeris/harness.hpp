#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aeris/channel_graph.hpp"
#include "aeris/echelon.hpp"
#include "aeris/operational.hpp"
#include "aeris/radio_env.hpp"
#include "aeris/scene.hpp"
#include "aeris/slot_grid.hpp"
#include "aeris/strategic.hpp"
#include "aeris/trajectory.hpp"

namespace aeris {

enum class Method { kPredictive, kBaselineAggregate, kBaselineSpacetime };

const char* method_name(Method m);
// Throws ConfigInvalid for an unknown name.
Method parse_method(const std::string& name);
const std::vector<Method>& all_methods();

struct AircraftParams {
  int count = 12;
  double altitude_min = 75.0;
  double altitude_max = 130.0;
  double speed_min = 10.0;
  double speed_max = 20.0;
  double v_max = 30.0;
  // Share of aircraft flying west-east ferry legs; the rest fly lawnmower
  // sweeps over a random block.
  double ferry_fraction = 0.5;
  double lane_spacing = 80.0;
};

struct MapParams {
  double history_period_s = 2.0;  // central map: an earlier pass, coarse
  double fresh_period_s = 0.5;    // local map adds a recent, denser pass
  double idw_exponent = 2.0;
  int k_neighbors = 8;
  double central_residual_std_db = 5.0;
  double local_residual_std_db = 4.0;
  double individual_residual_std_db = 0.0;
};

struct Horizons {
  double central_s = 600.0;
  double local_s = 30.0;
  double individual_s = 2.0;
  double central_staleness_s = 600.0;
  double individual_memory_s = 1.0;
};

struct PlanningParams {
  int tactical_slack_slots = 5;
  double local_radius_m = 500.0;
  double range_cutoff_m = 1500.0;
};

struct TrafficParams {
  double load_per_min = 4.0;
  double frac_2s = 0.2;
  double frac_20s = 0.8;
  // Flows arrive within [t0, end - arrival_margin_s] so that a 20 s flow
  // fits inside the horizon.
  double arrival_margin_s = 20.0;
};

struct ScenarioConfig {
  CityParams city;
  std::optional<Scene> scene;  // explicit scene overrides city generation
  AircraftParams aircraft;
  std::optional<std::vector<Trajectory4D>> trajectories;  // explicit routes
  DeviationParams deviation{3.0, 0.1};
  SlotGrid grid{0.0, 0.1, 1200};
  PathLossParams pathloss;
  LinkBudget budget;
  double per_node_cap_dbm = -65.0;
  Horizons horizons;
  MapParams maps;
  PlanningParams planning;
  TrafficParams traffic;
  std::uint64_t seed = 1;  // scenario generation seed

  // Throws ConfigInvalid naming the offending field.
  void validate() const;
};

// Routes for config.aircraft over the scene, deterministic in the seed.
std::vector<Trajectory4D> gen_routes(const Scene& scene, const AircraftParams& params,
                                     const SlotGrid& grid, std::uint64_t seed);

// Materializes scene and routes so that the config is self-contained.
ScenarioConfig gen_scenario(ScenarioConfig config);

struct FlowRequest {
  int id = 0;
  NodeId source = 0;
  NodeId dest = 0;
  int injection_slot = 0;
  double deadline_s = 20.0;
};

// Periodic arrivals at the configured load with a seeded phase; source,
// destination and deadline class drawn per flow.
std::vector<FlowRequest> gen_flows(const ScenarioConfig& config, const Scene& scene,
                                   std::uint64_t seed);

// Everything a run needs for one seed. Shared read-only across methods and
// loads.
struct World {
  ScenarioConfig config;
  std::uint64_t seed = 0;
  Scene scene;
  std::vector<Trajectory4D> plans;
  std::vector<RealizedPath> flown;
  std::vector<GroundNode> ground;  // terminals, then sensitive nodes
  std::vector<GroundNode> terminals;
  std::shared_ptr<const GroundTruthChannel> truth;
  RadioMap central_map;
  RadioMap local_map;
  std::shared_ptr<const ChannelGraph> graph;  // central map, planned positions
  std::shared_ptr<const InterferenceTable> table;

  Position3 realized_position(NodeId id, int slot) const;
  bool is_aircraft(NodeId id) const;
  std::vector<NodeId> relay_nodes() const;  // aircraft then terminals
  // Ground-truth interference of one transmission, mW*s.
  double interference(NodeId tx, int slot, double power_dbm) const;
  double true_gain_db(NodeId a, NodeId b, int slot) const;
};

// Throws ConfigInvalid (bad config) or InvalidArgument (degenerate scene).
World build_world(const ScenarioConfig& config, std::uint64_t seed);

struct Transmission {
  int flow = 0;
  int hop = 0;  // transmission index within the flow
  int slot = 0;
  NodeId tx = 0;
  NodeId rx = 0;
  double power_dbm = 0.0;
  int revision = 0;  // route revisions applied so far
  bool outage = false;
};

struct FlowOutcome {
  int flow = 0;
  bool delivered = false;
  int injection_slot = 0;
  int delivery_slot = -1;
  std::string reason;  // failure cause, empty when delivered
};

struct EventLog {
  std::vector<Transmission> transmissions;
  std::vector<FlowOutcome> outcomes;

  // One JSON object per line.
  std::string to_jsonl() const;
  static EventLog from_jsonl(const std::string& text);
};

struct MethodMetrics {
  Method method = Method::kPredictive;
  double interference_mw_s = 0.0;
  double interference_db = 0.0;  // -inf when no interference
  double delivery_rate = 0.0;    // 0 when no flows
  double mean_delay_s = 0.0;     // over delivered flows
  double energy_mj = 0.0;        // mean transmit energy per delivered flow
  int flows = 0;
  int delivered = 0;
};

struct MetricsReport {
  double load_per_min = 0.0;
  std::uint64_t seed = 0;
  std::vector<MethodMetrics> methods;
};

struct RunResult {
  MetricsReport report;
  EventLog log;
};

RunResult run(const World& world, Method method);
RunResult run(const ScenarioConfig& config, Method method, std::uint64_t seed);

// Recomputes the metrics of a run from its event log.
MetricsReport replay(const World& world, Method method, const EventLog& log);

// Snapshot min-hop route at the given slot over links feasible at p_max under
// the measured (true large-scale) gain at realized positions. Powers are the
// outage-compliant minimum per hop. Throws NoFeasiblePath.
struct SnapshotRoute {
  std::vector<NodeId> nodes;
  std::vector<double> powers_dbm;
};
SnapshotRoute baseline_aggregate(const World& world, NodeId source, NodeId dest, int slot);

// Delay-optimal reservation on the planned-trajectory graph.
PathReservation baseline_spacetime(const World& world, const FlowRequest& flow,
                                   const Occupancy* occupancy = nullptr);

struct SweepRow {
  double load = 0.0;
  Method method = Method::kPredictive;
  std::uint64_t seed = 0;
  MethodMetrics metrics;
};

// Full cross product; seeds are 1..n_seeds. Rows ordered by (load, method
// order as given, seed) whatever the thread count. threads <= 0 reads
// AERIS_THREADS (default: hardware concurrency).
std::vector<SweepRow> sweep(const ScenarioConfig& config, const std::vector<double>& loads,
                            const std::vector<Method>& methods, int n_seeds, int threads = 0);

int threads_from_env();

}  // namespace aeris
