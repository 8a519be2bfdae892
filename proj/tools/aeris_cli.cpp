// aeris: scenario generation, single runs, load sweeps and plot data.
//
// Exit codes: 0 ok, 2 config error, 3 infeasible scenario, 1 anything else.

#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aeris/error.hpp"
#include "aeris/harness.hpp"
#include "aeris/io.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kInfeasible = 3;

std::vector<double> parse_loads(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw aeris::ConfigInvalid("loads: bad value '" + item + "'");
    }
  }
  return out;
}

std::vector<aeris::Method> parse_methods(const std::string& text) {
  if (text == "all") return aeris::all_methods();
  std::vector<aeris::Method> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(aeris::parse_method(item));
  return out;
}

aeris::ScenarioConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = aeris::read_file(path);
  } catch (const aeris::InvalidArgument& e) {
    throw aeris::ConfigInvalid(std::string("config: ") + e.what());
  }
  return aeris::config_from_json(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Predictive low-altitude network planning"};
  app.require_subcommand(1);

  // gen-scenario
  auto* gen = app.add_subcommand("gen-scenario", "Generate a self-contained scenario config");
  std::string gen_out;
  std::uint64_t gen_seed = 1;
  aeris::ScenarioConfig gen_cfg;
  gen_cfg.city.terminal_band = 0.15;
  gen->add_option("--out", gen_out, "Output JSON file")->required();
  gen->add_option("--seed", gen_seed, "Generation seed");
  gen->add_option("--buildings", gen_cfg.city.building_count, "Number of buildings");
  gen->add_option("--aircraft", gen_cfg.aircraft.count, "Number of aircraft");
  gen->add_option("--sensitive", gen_cfg.city.n_sensitive, "Number of sensitive ground nodes");
  gen->add_option("--sources", gen_cfg.city.n_sources, "Number of ground sources");
  gen->add_option("--destinations", gen_cfg.city.n_destinations, "Number of ground destinations");
  gen->add_option("--size-x", gen_cfg.city.size_x, "Scene extent along x (m)");
  gen->add_option("--size-y", gen_cfg.city.size_y, "Scene extent along y (m)");
  gen->add_option("--size-z", gen_cfg.city.size_z, "Scene ceiling (m)");
  gen->add_option("--slots", gen_cfg.grid.n_slots, "Number of slots");
  gen->add_option("--dt", gen_cfg.grid.dt, "Slot length (s)");
  gen->add_option("--load", gen_cfg.traffic.load_per_min, "Flows per minute");
  gen->add_option("--sigma-dev", gen_cfg.deviation.sigma_dev, "Trajectory deviation std (m)");

  // run
  auto* runc = app.add_subcommand("run", "Run one method on one seed");
  std::string run_config, run_method = "predictive", run_out, run_events;
  std::uint64_t run_seed = 1;
  double run_load = -1.0;
  runc->add_option("--config", run_config, "Scenario config JSON")->required();
  runc->add_option("--method", run_method, "predictive | baseline_aggregate | baseline_spacetime");
  runc->add_option("--seed", run_seed, "Run seed");
  runc->add_option("--out", run_out, "Metrics JSON output")->required();
  runc->add_option("--events", run_events, "Event log (JSON lines) output");
  runc->add_option("--load", run_load, "Override the config's flows per minute");

  // replay
  auto* rep = app.add_subcommand("replay", "Recompute metrics from an event log");
  std::string rep_config, rep_method = "predictive", rep_events, rep_out;
  std::uint64_t rep_seed = 1;
  rep->add_option("--config", rep_config, "Scenario config JSON")->required();
  rep->add_option("--method", rep_method, "Method that produced the log");
  rep->add_option("--seed", rep_seed, "Run seed");
  rep->add_option("--events", rep_events, "Event log")->required();
  rep->add_option("--out", rep_out, "Metrics JSON output")->required();

  // sweep
  auto* sw = app.add_subcommand("sweep", "Load sweep over methods and seeds");
  std::string sw_config, sw_loads = "1,2,4,8,16", sw_methods = "all", sw_out;
  int sw_seeds = 20;
  int sw_threads = 0;
  sw->add_option("--config", sw_config, "Scenario config JSON")->required();
  sw->add_option("--loads", sw_loads, "Comma-separated flows per minute");
  sw->add_option("--methods", sw_methods, "Comma-separated methods or 'all'");
  sw->add_option("--seeds", sw_seeds, "Seeds 1..N");
  sw->add_option("--threads", sw_threads, "Worker threads (default AERIS_THREADS)");
  sw->add_option("--out", sw_out, "sweep.csv output")->required();

  // plot-data
  auto* pd = app.add_subcommand("plot-data", "Median and IQR per load and method");
  std::string pd_in, pd_out;
  pd->add_option("--in", pd_in, "sweep.csv")->required();
  pd->add_option("--out", pd_out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*gen) {
      gen_cfg.seed = gen_seed;
      gen_cfg.validate();
      const aeris::ScenarioConfig full = aeris::gen_scenario(gen_cfg);
      full.validate();
      aeris::write_file(gen_out, aeris::config_to_json(full) + "\n");
    } else if (*runc) {
      aeris::ScenarioConfig cfg = load_config(run_config);
      if (run_load >= 0) cfg.traffic.load_per_min = run_load;
      const aeris::Method m = aeris::parse_method(run_method);
      const aeris::RunResult r = aeris::run(cfg, m, run_seed);
      aeris::write_file(run_out, aeris::metrics_to_json(r.report));
      if (!run_events.empty()) aeris::write_file(run_events, r.log.to_jsonl());
    } else if (*rep) {
      const aeris::ScenarioConfig cfg = load_config(rep_config);
      const aeris::World world = aeris::build_world(cfg, rep_seed);
      const auto log = aeris::EventLog::from_jsonl(aeris::read_file(rep_events));
      const auto report = aeris::replay(world, aeris::parse_method(rep_method), log);
      aeris::write_file(rep_out, aeris::metrics_to_json(report));
    } else if (*sw) {
      const aeris::ScenarioConfig cfg = load_config(sw_config);
      const auto rows = aeris::sweep(cfg, parse_loads(sw_loads), parse_methods(sw_methods), sw_seeds, sw_threads);
      aeris::write_file(sw_out, aeris::sweep_to_csv(rows));
    } else if (*pd) {
      const auto rows = aeris::sweep_from_csv(aeris::read_file(pd_in));
      const auto plot = aeris::plot_data(rows);
      aeris::write_file(pd_out, aeris::plot_data_to_csv(plot));
    }
  } catch (const aeris::ConfigInvalid& e) {
    std::cerr << e.what() << '\n';
    return kConfigError;
  } catch (const aeris::GenerationFailed& e) {
    std::cerr << e.what() << '\n';
    return kInfeasible;
  } catch (const aeris::NoFeasiblePath& e) {
    std::cerr << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
