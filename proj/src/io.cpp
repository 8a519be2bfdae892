#include "aeris/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "aeris/error.hpp"
#include "json.hpp"

namespace aeris {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

namespace {

json pos_json(const Position3& p) { return json::array({p.x, p.y, p.z}); }

Position3 pos_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw InvalidArgument("position must be [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

// Reads keys of one JSON object, tracking which were consumed so that
// misspelled keys are reported instead of silently ignored.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigInvalid(label() + ": expected an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    if (!j_.contains(key)) return;
    seen_.insert(key);
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigInvalid(field(key) + ": " + e.what());
    }
  }

  bool has(const char* key) const { return j_.contains(key); }
  const json& raw(const char* key) {
    seen_.insert(key);
    return j_.at(key);
  }
  Section sub(const char* key) {
    seen_.insert(key);
    return Section(j_.at(key), field(key));
  }
  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) throw ConfigInvalid(field(k) + ": unknown key");
    }
  }

 private:
  std::string label() const { return path_.empty() ? "config" : path_; }
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

json scene_json(const Scene& s) {
  json obstacles = json::array();
  for (const auto& o : s.obstacles) obstacles.push_back({{"lo", pos_json(o.lo)}, {"hi", pos_json(o.hi)}});
  json nodes = json::array();
  auto add = [&](const std::vector<GroundNode>& v, const char* role) {
    for (const auto& g : v) nodes.push_back({{"id", g.id}, {"role", role}, {"pos", pos_json(g.pos)}});
  };
  add(s.ground_sources, "source");
  add(s.ground_destinations, "destination");
  add(s.sensitive_nodes, "sensitive");
  return {{"bounds", {{"lo", pos_json(s.bounds.lo)}, {"hi", pos_json(s.bounds.hi)}}},
          {"obstacles", obstacles},
          {"nodes", nodes}};
}

Scene scene_from(const json& j) {
  Scene s;
  s.bounds = {pos_from(j.at("bounds").at("lo")), pos_from(j.at("bounds").at("hi"))};
  for (const auto& o : j.value("obstacles", json::array())) s.obstacles.push_back({pos_from(o.at("lo")), pos_from(o.at("hi"))});
  for (const auto& n : j.value("nodes", json::array())) {
    GroundNode g{n.at("id").get<NodeId>(), pos_from(n.at("pos"))};
    const std::string role = n.at("role").get<std::string>();
    if (role == "source") {
      s.ground_sources.push_back(g);
    } else if (role == "destination") {
      s.ground_destinations.push_back(g);
    } else if (role == "sensitive") {
      s.sensitive_nodes.push_back(g);
    } else {
      throw InvalidArgument("unknown node role '" + role + "'");
    }
  }
  s.validate();
  return s;
}

json trajectories_json(std::span<const Trajectory4D> trajs) {
  json out = json::array();
  for (const auto& t : trajs) {
    json wps = json::array();
    for (const auto& w : t.waypoints) wps.push_back({w.t, w.pos.x, w.pos.y, w.pos.z});
    out.push_back({{"aircraft_id", t.aircraft_id}, {"waypoints", wps}});
  }
  return out;
}

std::vector<Trajectory4D> trajectories_from(const json& j) {
  if (!j.is_array()) throw InvalidArgument("trajectories must be an array");
  std::vector<Trajectory4D> out;
  for (const auto& t : j) {
    Trajectory4D traj;
    traj.aircraft_id = t.at("aircraft_id").get<NodeId>();
    for (const auto& w : t.at("waypoints")) {
      if (!w.is_array() || w.size() != 4) throw InvalidArgument("waypoint must be [t, x, y, z]");
      traj.waypoints.push_back({w[0].get<double>(), {w[1].get<double>(), w[2].get<double>(), w[3].get<double>()}});
    }
    out.push_back(std::move(traj));
  }
  return out;
}

template <class F>
auto parse_or_throw(const std::string& text, const char* what, F&& f) {
  try {
    return f(json::parse(text));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string scene_to_json(const Scene& scene) { return scene_json(scene).dump(2); }

Scene scene_from_json(const std::string& text) {
  return parse_or_throw(text, "scene", [](const json& j) { return scene_from(j); });
}

std::string trajectories_to_json(std::span<const Trajectory4D> trajs) { return trajectories_json(trajs).dump(2); }

std::vector<Trajectory4D> trajectories_from_json(const std::string& text) {
  return parse_or_throw(text, "trajectories", [](const json& j) { return trajectories_from(j); });
}

std::string config_to_json(const ScenarioConfig& c) {
  json j;
  const auto& cp = c.city;
  j["city"] = {{"size_x", cp.size_x},         {"size_y", cp.size_y},
               {"size_z", cp.size_z},         {"building_count", cp.building_count},
               {"footprint_min", cp.footprint_min}, {"footprint_max", cp.footprint_max},
               {"height_min", cp.height_min}, {"height_max", cp.height_max},
               {"n_sources", cp.n_sources},   {"n_destinations", cp.n_destinations},
               {"n_sensitive", cp.n_sensitive}, {"ground_height", cp.ground_height},
               {"terminal_band", cp.terminal_band}, {"first_id", cp.first_id},
               {"max_retries", cp.max_retries}};
  if (c.scene) j["scene"] = scene_json(*c.scene);
  const auto& a = c.aircraft;
  j["aircraft"] = {{"count", a.count},           {"altitude_min", a.altitude_min},
                   {"altitude_max", a.altitude_max}, {"speed_min", a.speed_min},
                   {"speed_max", a.speed_max},   {"v_max", a.v_max},
                   {"ferry_fraction", a.ferry_fraction}, {"lane_spacing", a.lane_spacing}};
  if (c.trajectories) j["trajectories"] = trajectories_json(*c.trajectories);
  j["deviation"] = {{"sigma_dev", c.deviation.sigma_dev}, {"reversion_rate", c.deviation.reversion_rate}};
  j["grid"] = {{"t0", c.grid.t0}, {"dt", c.grid.dt}, {"n_slots", c.grid.n_slots}};
  const auto& pl = c.pathloss;
  j["pathloss"] = {{"pl0_db", pl.pl0_db},   {"d0", pl.d0},
                   {"n_los", pl.n_los},     {"n_nlos", pl.n_nlos},
                   {"n_ground", pl.n_ground}, {"ground_level_m", pl.ground_level_m},
                   {"sigma_sh_los_db", pl.sigma_sh_los_db}, {"sigma_sh_nlos_db", pl.sigma_sh_nlos_db},
                   {"decorr_dist", pl.decorr_dist}, {"noise_dbm", pl.noise_dbm}};
  const auto& b = c.budget;
  j["budget"] = {{"snr_threshold_db", b.snr_threshold_db}, {"outage_eps", b.outage_eps},
                 {"noise_dbm", b.noise_dbm}, {"p_max_dbm", b.p_max_dbm}};
  j["per_node_cap_dbm"] = c.per_node_cap_dbm;
  const auto& h = c.horizons;
  j["horizons"] = {{"central_s", h.central_s}, {"local_s", h.local_s}, {"individual_s", h.individual_s},
                   {"central_staleness_s", h.central_staleness_s},
                   {"individual_memory_s", h.individual_memory_s}};
  const auto& m = c.maps;
  j["maps"] = {{"history_period_s", m.history_period_s}, {"fresh_period_s", m.fresh_period_s},
               {"idw_exponent", m.idw_exponent}, {"k_neighbors", m.k_neighbors},
               {"central_residual_std_db", m.central_residual_std_db},
               {"local_residual_std_db", m.local_residual_std_db},
               {"individual_residual_std_db", m.individual_residual_std_db}};
  j["planning"] = {{"tactical_slack_slots", c.planning.tactical_slack_slots},
                   {"local_radius_m", c.planning.local_radius_m},
                   {"range_cutoff_m", c.planning.range_cutoff_m}};
  j["traffic"] = {{"load_per_min", c.traffic.load_per_min}, {"frac_2s", c.traffic.frac_2s},
                  {"frac_20s", c.traffic.frac_20s}, {"arrival_margin_s", c.traffic.arrival_margin_s}};
  j["seed"] = c.seed;
  return j.dump(2);
}

ScenarioConfig config_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigInvalid(std::string("config: not valid JSON: ") + e.what());
  }
  ScenarioConfig c;
  Section r(root, "");
  if (r.has("city")) {
    Section s = r.sub("city");
    auto& cp = c.city;
    s.get("size_x", cp.size_x);
    s.get("size_y", cp.size_y);
    s.get("size_z", cp.size_z);
    s.get("building_count", cp.building_count);
    s.get("footprint_min", cp.footprint_min);
    s.get("footprint_max", cp.footprint_max);
    s.get("height_min", cp.height_min);
    s.get("height_max", cp.height_max);
    s.get("n_sources", cp.n_sources);
    s.get("n_destinations", cp.n_destinations);
    s.get("n_sensitive", cp.n_sensitive);
    s.get("ground_height", cp.ground_height);
    s.get("terminal_band", cp.terminal_band);
    s.get("first_id", cp.first_id);
    s.get("max_retries", cp.max_retries);
    s.finish();
  }
  if (r.has("scene")) {
    try {
      c.scene = scene_from(r.raw("scene"));
    } catch (const json::exception& e) {
      throw ConfigInvalid(std::string("scene: ") + e.what());
    } catch (const InvalidArgument& e) {
      throw ConfigInvalid(std::string("scene: ") + e.what());
    }
  }
  if (r.has("aircraft")) {
    Section s = r.sub("aircraft");
    auto& a = c.aircraft;
    s.get("count", a.count);
    s.get("altitude_min", a.altitude_min);
    s.get("altitude_max", a.altitude_max);
    s.get("speed_min", a.speed_min);
    s.get("speed_max", a.speed_max);
    s.get("v_max", a.v_max);
    s.get("ferry_fraction", a.ferry_fraction);
    s.get("lane_spacing", a.lane_spacing);
    s.finish();
  }
  if (r.has("trajectories")) {
    try {
      c.trajectories = trajectories_from(r.raw("trajectories"));
    } catch (const json::exception& e) {
      throw ConfigInvalid(std::string("trajectories: ") + e.what());
    } catch (const InvalidArgument& e) {
      throw ConfigInvalid(std::string("trajectories: ") + e.what());
    }
  }
  if (r.has("deviation")) {
    Section s = r.sub("deviation");
    s.get("sigma_dev", c.deviation.sigma_dev);
    s.get("reversion_rate", c.deviation.reversion_rate);
    s.finish();
  }
  if (r.has("grid")) {
    Section s = r.sub("grid");
    s.get("t0", c.grid.t0);
    s.get("dt", c.grid.dt);
    s.get("n_slots", c.grid.n_slots);
    s.finish();
  }
  if (r.has("pathloss")) {
    Section s = r.sub("pathloss");
    auto& pl = c.pathloss;
    s.get("pl0_db", pl.pl0_db);
    s.get("d0", pl.d0);
    s.get("n_los", pl.n_los);
    s.get("n_nlos", pl.n_nlos);
    s.get("n_ground", pl.n_ground);
    s.get("ground_level_m", pl.ground_level_m);
    s.get("sigma_sh_los_db", pl.sigma_sh_los_db);
    s.get("sigma_sh_nlos_db", pl.sigma_sh_nlos_db);
    s.get("decorr_dist", pl.decorr_dist);
    s.get("noise_dbm", pl.noise_dbm);
    s.finish();
  }
  if (r.has("budget")) {
    Section s = r.sub("budget");
    auto& b = c.budget;
    s.get("snr_threshold_db", b.snr_threshold_db);
    s.get("outage_eps", b.outage_eps);
    s.get("noise_dbm", b.noise_dbm);
    s.get("p_max_dbm", b.p_max_dbm);
    s.finish();
  }
  r.get("per_node_cap_dbm", c.per_node_cap_dbm);
  if (r.has("horizons")) {
    Section s = r.sub("horizons");
    auto& h = c.horizons;
    s.get("central_s", h.central_s);
    s.get("local_s", h.local_s);
    s.get("individual_s", h.individual_s);
    s.get("central_staleness_s", h.central_staleness_s);
    s.get("individual_memory_s", h.individual_memory_s);
    s.finish();
  }
  if (r.has("maps")) {
    Section s = r.sub("maps");
    auto& m = c.maps;
    s.get("history_period_s", m.history_period_s);
    s.get("fresh_period_s", m.fresh_period_s);
    s.get("idw_exponent", m.idw_exponent);
    s.get("k_neighbors", m.k_neighbors);
    s.get("central_residual_std_db", m.central_residual_std_db);
    s.get("local_residual_std_db", m.local_residual_std_db);
    s.get("individual_residual_std_db", m.individual_residual_std_db);
    s.finish();
  }
  if (r.has("planning")) {
    Section s = r.sub("planning");
    s.get("tactical_slack_slots", c.planning.tactical_slack_slots);
    s.get("local_radius_m", c.planning.local_radius_m);
    s.get("range_cutoff_m", c.planning.range_cutoff_m);
    s.finish();
  }
  if (r.has("traffic")) {
    Section s = r.sub("traffic");
    s.get("load_per_min", c.traffic.load_per_min);
    s.get("frac_2s", c.traffic.frac_2s);
    s.get("frac_20s", c.traffic.frac_20s);
    s.get("arrival_margin_s", c.traffic.arrival_margin_s);
    s.finish();
  }
  r.get("seed", c.seed);
  r.finish();
  c.validate();
  return c;
}

// ---------------------------------------------------------------- CSV

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s, int lineno) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("line " + std::to_string(lineno) + ": bad number '" + s + "'");
  }
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text, const std::string& header) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind(header, 0) != 0) throw InvalidArgument("unexpected CSV header '" + line + "'");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split(line));
  }
  return rows;
}

}  // namespace

std::string samples_to_csv(std::span<const ChannelSample> samples) {
  std::ostringstream os;
  os << "tx_x,tx_y,tx_z,rx_x,rx_y,rx_z,gain_db,los\n";
  for (const auto& s : samples) {
    os << fmt(s.tx.x) << ',' << fmt(s.tx.y) << ',' << fmt(s.tx.z) << ',' << fmt(s.rx.x) << ','
       << fmt(s.rx.y) << ',' << fmt(s.rx.z) << ',' << fmt(s.gain_db) << ',' << (s.los ? 1 : 0) << '\n';
  }
  return os.str();
}

std::vector<ChannelSample> samples_from_csv(const std::string& text) {
  std::vector<ChannelSample> out;
  int lineno = 1;
  for (const auto& row : csv_rows(text, "tx_x,tx_y,tx_z,rx_x,rx_y,rx_z,gain_db")) {
    ++lineno;
    if (row.size() != 7 && row.size() != 8) {
      throw InvalidArgument("line " + std::to_string(lineno) + ": expected 7 or 8 fields");
    }
    ChannelSample s;
    s.tx = {to_double(row[0], lineno), to_double(row[1], lineno), to_double(row[2], lineno)};
    s.rx = {to_double(row[3], lineno), to_double(row[4], lineno), to_double(row[5], lineno)};
    s.gain_db = to_double(row[6], lineno);
    s.los = row.size() == 8 ? to_double(row[7], lineno) != 0.0 : true;
    out.push_back(s);
  }
  return out;
}

std::string graph_to_csv(const ChannelGraph& graph) {
  std::ostringstream os;
  os << "t,i,j,gain_db\n";
  const auto& ids = graph.nodes();
  const int n = static_cast<int>(ids.size());
  for (int t = 0; t < graph.grid().n_slots; ++t) {
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        const double w = graph.weight_at(a, b, t);
        if (std::isnan(w)) continue;
        os << fmt(graph.grid().time(t)) << ',' << ids[a] << ',' << ids[b] << ',' << fmt(w) << '\n';
      }
    }
  }
  return os.str();
}

std::string policy_to_csv(const PowerPolicy& policy) {
  std::ostringstream os;
  os << "bin_low_db,bin_high_db,power_dbm\n";
  for (int k = 0; k < policy.bin_count(); ++k) {
    os << fmt(policy.edges_db[k]) << ',' << fmt(policy.edges_db[k + 1]) << ',';
    if (policy.power_dbm[k]) os << fmt(*policy.power_dbm[k]);
    os << '\n';
  }
  return os.str();
}

std::string reservation_to_json(const PathReservation& r) {
  json hops = json::array();
  for (const auto& h : r.hops) {
    hops.push_back({{"tx", h.tx},
                    {"rx", h.rx},
                    {"window", {h.window.start, h.window.end}},
                    {"slot", h.slot},
                    {"nominal_power_dbm", h.nominal_power_dbm},
                    {"tx_airborne", h.tx_airborne}});
  }
  json j{{"injection_slot", r.injection_slot},
         {"delivery_slot", r.delivery_slot},
         {"predicted_cost_mw_s", r.predicted_cost},
         {"hops", hops}};
  return j.dump(2);
}

PathReservation reservation_from_json(const std::string& text) {
  return parse_or_throw(text, "reservation", [](const json& j) {
    PathReservation r;
    r.injection_slot = j.at("injection_slot").get<int>();
    r.delivery_slot = j.at("delivery_slot").get<int>();
    r.predicted_cost = j.at("predicted_cost_mw_s").get<double>();
    for (const auto& h : j.at("hops")) {
      HopReservation hop;
      hop.tx = h.at("tx").get<NodeId>();
      hop.rx = h.at("rx").get<NodeId>();
      hop.window = {h.at("window").at(0).get<int>(), h.at("window").at(1).get<int>()};
      hop.slot = h.at("slot").get<int>();
      hop.nominal_power_dbm = h.at("nominal_power_dbm").get<double>();
      hop.tx_airborne = h.at("tx_airborne").get<bool>();
      r.hops.push_back(hop);
    }
    return r;
  });
}

std::string metrics_to_json(const MetricsReport& report) {
  json methods = json::array();
  for (const auto& m : report.methods) {
    methods.push_back({{"method", method_name(m.method)},
                       {"interference_mw_s", m.interference_mw_s},
                       {"interference_db", std::isfinite(m.interference_db) ? json(m.interference_db) : json(nullptr)},
                       {"delivery_rate", m.delivery_rate},
                       {"mean_delay_s", m.mean_delay_s},
                       {"energy_mj", m.energy_mj},
                       {"flows", m.flows},
                       {"delivered", m.delivered}});
  }
  json j{{"load_per_min", report.load_per_min}, {"seed", report.seed}, {"methods", methods}};
  return j.dump(2) + "\n";
}

std::string sweep_to_csv(std::span<const SweepRow> rows) {
  std::ostringstream os;
  os << "load,method,seed,interference_mw_s,interference_db,delivery_rate,mean_delay_s,energy_mj\n";
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    os << fmt(r.load) << ',' << method_name(r.method) << ',' << r.seed << ',' << fmt(m.interference_mw_s) << ','
       << fmt(m.interference_db) << ',' << fmt(m.delivery_rate) << ',' << fmt(m.mean_delay_s) << ','
       << fmt(m.energy_mj) << '\n';
  }
  return os.str();
}

std::vector<SweepRow> sweep_from_csv(const std::string& text) {
  std::vector<SweepRow> out;
  int lineno = 1;
  for (const auto& row : csv_rows(text, "load,method,seed,interference_mw_s,interference_db")) {
    ++lineno;
    if (row.size() != 8) throw InvalidArgument("line " + std::to_string(lineno) + ": expected 8 fields");
    SweepRow r;
    r.load = to_double(row[0], lineno);
    r.method = parse_method(row[1]);
    r.seed = static_cast<std::uint64_t>(to_double(row[2], lineno));
    r.metrics.method = r.method;
    r.metrics.interference_mw_s = to_double(row[3], lineno);
    r.metrics.interference_db = to_double(row[4], lineno);
    r.metrics.delivery_rate = to_double(row[5], lineno);
    r.metrics.mean_delay_s = to_double(row[6], lineno);
    r.metrics.energy_mj = to_double(row[7], lineno);
    out.push_back(r);
  }
  return out;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("quantile of an empty set");
  std::sort(values.begin(), values.end());
  const double pos = q * (values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double f = pos - lo;
  if (f == 0.0 || values[lo] == values[hi]) return values[lo];
  return values[lo] + f * (values[hi] - values[lo]);
}

std::vector<PlotRow> plot_data(std::span<const SweepRow> rows) {
  std::map<std::pair<double, int>, std::vector<const SweepRow*>> groups;
  for (const auto& r : rows) groups[{r.load, static_cast<int>(r.method)}].push_back(&r);
  std::vector<PlotRow> out;
  for (const auto& [key, members] : groups) {
    std::vector<double> db, rate;
    for (const auto* r : members) {
      db.push_back(r->metrics.interference_db);
      rate.push_back(r->metrics.delivery_rate);
    }
    PlotRow p;
    p.load = key.first;
    p.method = static_cast<Method>(key.second);
    p.n = static_cast<int>(members.size());
    p.median_db = quantile(db, 0.5);
    p.q25_db = quantile(db, 0.25);
    p.q75_db = quantile(db, 0.75);
    p.median_delivery_rate = quantile(rate, 0.5);
    out.push_back(p);
  }
  return out;
}

std::string plot_data_to_csv(std::span<const PlotRow> rows) {
  std::ostringstream os;
  os << "load,method,n,median_interference_db,q25_interference_db,q75_interference_db,iqr_db,"
        "median_delivery_rate\n";
  for (const auto& p : rows) {
    os << fmt(p.load) << ',' << method_name(p.method) << ',' << p.n << ',' << fmt(p.median_db) << ','
       << fmt(p.q25_db) << ',' << fmt(p.q75_db) << ',' << fmt(p.q75_db - p.q25_db) << ','
       << fmt(p.median_delivery_rate) << '\n';
  }
  return os.str();
}

}  // namespace aeris
