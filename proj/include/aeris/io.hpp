#pragma once

#include <span>
#include <string>
#include <vector>

#include "aeris/channel_graph.hpp"
#include "aeris/harness.hpp"
#include "aeris/operational.hpp"
#include "aeris/radio_env.hpp"
#include "aeris/scene.hpp"
#include "aeris/strategic.hpp"
#include "aeris/trajectory.hpp"

namespace aeris {

// Whole-file helpers. Throw InvalidArgument when the file cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// Scene: {"bounds": {"lo": [x,y,z], "hi": [...]}, "obstacles": [{"lo","hi"}],
//         "nodes": [{"id", "role": "source|destination|sensitive", "pos": [...]}]}
std::string scene_to_json(const Scene& scene);
Scene scene_from_json(const std::string& text);

// [{"aircraft_id": 1, "waypoints": [[t, x, y, z], ...]}, ...]
std::string trajectories_to_json(std::span<const Trajectory4D> trajs);
std::vector<Trajectory4D> trajectories_from_json(const std::string& text);

// Scenario config. Unknown keys are rejected; missing keys keep defaults.
// Throws ConfigInvalid with the offending field path.
std::string config_to_json(const ScenarioConfig& config);
ScenarioConfig config_from_json(const std::string& text);

// tx_x,tx_y,tx_z,rx_x,rx_y,rx_z,gain_db[,los]
std::string samples_to_csv(std::span<const ChannelSample> samples);
std::vector<ChannelSample> samples_from_csv(const std::string& text);

// t,i,j,gain_db for every in-range pair and slot (i < j).
std::string graph_to_csv(const ChannelGraph& graph);

// bin_low_db,bin_high_db,power_dbm (empty power means defer)
std::string policy_to_csv(const PowerPolicy& policy);

std::string reservation_to_json(const PathReservation& r);
PathReservation reservation_from_json(const std::string& text);

std::string metrics_to_json(const MetricsReport& report);

// load,method,seed,interference_mw_s,interference_db,delivery_rate,mean_delay_s,energy_mj
std::string sweep_to_csv(std::span<const SweepRow> rows);
std::vector<SweepRow> sweep_from_csv(const std::string& text);

// Per (load, method): median and interquartile range of interference (dB)
// plus the median delivery rate.
struct PlotRow {
  double load = 0.0;
  Method method = Method::kPredictive;
  int n = 0;
  double median_db = 0.0;
  double q25_db = 0.0;
  double q75_db = 0.0;
  double median_delivery_rate = 0.0;
};
std::vector<PlotRow> plot_data(std::span<const SweepRow> rows);
std::string plot_data_to_csv(std::span<const PlotRow> rows);

// Linear-interpolated quantile of unsorted data (q in [0, 1]).
double quantile(std::vector<double> values, double q);

}  // namespace aeris
