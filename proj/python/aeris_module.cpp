#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>
#include <vector>

#include "aeris/error.hpp"
#include "aeris/harness.hpp"
#include "aeris/io.hpp"
#include "aeris/operational.hpp"
#include "aeris/scene.hpp"

namespace py = pybind11;
using namespace aeris;

namespace {

LinkBudget budget_of(double snr_threshold_db, double outage_eps, double noise_dbm, double p_max_dbm) {
  LinkBudget b{snr_threshold_db, outage_eps, noise_dbm, p_max_dbm};
  b.validate();
  return b;
}

std::vector<Method> methods_of(const std::vector<std::string>& names) {
  if (names.size() == 1 && names[0] == "all") return all_methods();
  std::vector<Method> out;
  for (const auto& n : names) out.push_back(parse_method(n));
  return out;
}

}  // namespace

PYBIND11_MODULE(_aeris, m) {
  m.doc() = "Predictive low-altitude routing simulator";

  static py::exception<Error> error(m, "Error");
  static py::exception<ConfigInvalid> config_invalid(m, "ConfigInvalid", error.ptr());
  static py::exception<NoFeasiblePath> no_path(m, "NoFeasiblePath", error.ptr());
  static py::exception<ExceedsPMax> exceeds(m, "ExceedsPMax", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigInvalid& e) {
      config_invalid(e.what());
    } catch (const NoFeasiblePath& e) {
      no_path(e.what());
    } catch (const ExceedsPMax& e) {
      exceeds(e.what());
    } catch (const Error& e) {
      error(e.what());
    }
  });

  m.def("gen_scenario",
        [](const std::string& config_json) { return config_to_json(gen_scenario(config_from_json(config_json))); },
        py::arg("config_json"), "Materialize scene and routes; returns the config as JSON.");

  m.def("default_config", [] { return config_to_json(ScenarioConfig{}); });

  m.def(
      "run",
      [](const std::string& config_json, const std::string& method, std::uint64_t seed) {
        const auto cfg = config_from_json(config_json);
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run(cfg, parse_method(method), seed);
        }
        return py::make_tuple(metrics_to_json(r.report), r.log.to_jsonl());
      },
      py::arg("config_json"), py::arg("method"), py::arg("seed"),
      "Returns (metrics JSON, event log JSON lines).");

  m.def(
      "sweep",
      [](const std::string& config_json, const std::vector<double>& loads,
         const std::vector<std::string>& methods, int seeds, int threads) {
        const auto cfg = config_from_json(config_json);
        const auto ms = methods_of(methods);
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = sweep(cfg, loads, ms, seeds, threads);
        }
        return sweep_to_csv(rows);
      },
      py::arg("config_json"), py::arg("loads"), py::arg("methods") = std::vector<std::string>{"all"},
      py::arg("seeds") = 20, py::arg("threads") = 0, "Returns the sweep as CSV text.");

  m.def(
      "plot_data",
      [](const std::string& sweep_csv) {
        const auto rows = sweep_from_csv(sweep_csv);
        return plot_data_to_csv(plot_data(rows));
      },
      py::arg("sweep_csv"));

  m.def(
      "min_power_outage",
      [](double gain_db, double snr_threshold_db, double outage_eps, double noise_dbm, double p_max_dbm) {
        return min_power_outage(gain_db, budget_of(snr_threshold_db, outage_eps, noise_dbm, p_max_dbm));
      },
      py::arg("gain_db"), py::arg("snr_threshold_db") = 10.0, py::arg("outage_eps") = 0.01,
      py::arg("noise_dbm") = -100.0, py::arg("p_max_dbm") = 30.0);

  m.def(
      "outage_probability",
      [](double power_dbm, double gain_db, double snr_threshold_db, double noise_dbm) {
        LinkBudget b;
        b.snr_threshold_db = snr_threshold_db;
        b.noise_dbm = noise_dbm;
        return outage_probability(power_dbm, gain_db, b);
      },
      py::arg("power_dbm"), py::arg("gain_db"), py::arg("snr_threshold_db") = 10.0,
      py::arg("noise_dbm") = -100.0);

  m.def(
      "los_blocked",
      [](const std::string& scene_json, std::array<double, 3> a, std::array<double, 3> b) {
        return los_blocked(scene_from_json(scene_json), {a[0], a[1], a[2]}, {b[0], b[1], b[2]});
      },
      py::arg("scene_json"), py::arg("a"), py::arg("b"));
}
