#include "aeris/echelon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "aeris/error.hpp"
#include "aeris/random.hpp"

namespace aeris {

const char* tier_name(Tier tier) {
  switch (tier) {
    case Tier::kCentral: return "central";
    case Tier::kLocal: return "local";
    case Tier::kIndividual: return "individual";
  }
  return "?";
}

WorldView::WorldView(const GroundTruthChannel& truth, std::span<const Trajectory4D> plans,
                     std::span<const RealizedPath> flown, std::span<const GroundNode> ground,
                     DeviationParams deviation, double now)
    : truth_(&truth), plans_(plans), flown_(flown), ground_(ground), deviation_(deviation),
      now_(now) {
  if (plans.size() != flown.size()) throw InvalidArgument("one flown path per plan required");
  for (std::size_t i = 0; i < plans.size(); ++i) {
    if (!index_.emplace(plans[i].aircraft_id, Entry{true, i}).second)
      throw InvalidArgument("duplicate node id " + std::to_string(plans[i].aircraft_id));
  }
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (!index_.emplace(ground[i].id, Entry{false, i}).second)
      throw InvalidArgument("duplicate node id " + std::to_string(ground[i].id));
  }
}

WorldView WorldView::at(double now) const {
  WorldView copy = *this;
  copy.now_ = now;
  return copy;
}

const WorldView::Entry& WorldView::entry(NodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownNode("node " + std::to_string(id));
  return it->second;
}

std::pair<double, double> WorldView::time_span() const {
  if (!flown_.empty()) {
    const SlotGrid& g = flown_.front().grid;
    return {g.t0, g.time(g.n_slots - 1)};
  }
  if (!plans_.empty()) return {plans_.front().start_time(), plans_.front().end_time()};
  return {now_, now_};
}

bool WorldView::is_aircraft(NodeId id) const { return entry(id).aircraft; }

std::vector<NodeId> WorldView::node_ids() const {
  std::vector<NodeId> ids;
  for (const auto& t : plans_) ids.push_back(t.aircraft_id);
  for (const auto& g : ground_) ids.push_back(g.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

Position3 WorldView::planned_position(NodeId id, double t) const {
  const auto& e = entry(id);
  return e.aircraft ? position_at(plans_[e.index], t) : ground_[e.index].pos;
}

Position3 WorldView::realized_position(NodeId id, double t) const {
  const auto& e = entry(id);
  return e.aircraft ? realized_position_at(plans_[e.index], flown_[e.index], t)
                    : ground_[e.index].pos;
}

double WorldView::true_gain_db(NodeId i, NodeId j, double t) const {
  return truth_->gain_db(realized_position(i, t), realized_position(j, t));
}

EchelonView EchelonView::central(RadioMap map, double staleness_s, double horizon_s) {
  EchelonView v;
  v.tier = Tier::kCentral;
  v.map = std::move(map);
  v.staleness_s = staleness_s;
  v.horizon_s = horizon_s;
  v.validate();
  return v;
}

EchelonView EchelonView::local(RadioMap map, double staleness_s, double horizon_s,
                               Position3 center, double radius) {
  EchelonView v;
  v.tier = Tier::kLocal;
  v.map = std::move(map);
  v.staleness_s = staleness_s;
  v.horizon_s = horizon_s;
  v.region_center = center;
  v.region_radius = radius;
  v.validate();
  return v;
}

EchelonView EchelonView::individual(RadioMap map, NodeId owner, double horizon_s,
                                    double memory_s) {
  EchelonView v;
  v.tier = Tier::kIndividual;
  v.map = std::move(map);
  v.horizon_s = horizon_s;
  v.owner = owner;
  v.memory_s = memory_s;
  v.validate();
  return v;
}

TrajectorySource EchelonView::trajectory_source() const {
  switch (tier) {
    case Tier::kCentral: return TrajectorySource::kPlanned;
    case Tier::kLocal: return TrajectorySource::kRealizedWithinRegion;
    case Tier::kIndividual: return TrajectorySource::kSelfOnly;
  }
  return TrajectorySource::kPlanned;
}

MeasurementAccess EchelonView::measurement_access() const {
  return tier == Tier::kIndividual ? MeasurementAccess::kOwnLinksInstantaneous
                                   : MeasurementAccess::kNone;
}

void EchelonView::validate() const {
  if (!(staleness_s >= 0.0)) throw InvalidArgument("staleness must be >= 0");
  if (!(horizon_s >= 0.0)) throw InvalidArgument("horizon must be >= 0");
  const bool has_region = region_center.has_value() && region_radius.has_value();
  if (has_region != (tier == Tier::kLocal) ||
      (region_center.has_value() != region_radius.has_value())) {
    throw InvalidArgument("region fields are required for, and only for, the local tier");
  }
  if (has_region && !(*region_radius > 0.0)) throw InvalidArgument("region radius must be > 0");
  if (tier == Tier::kIndividual && !owner) throw InvalidArgument("individual view needs an owner");
  if (tier == Tier::kIndividual && !(memory_s > 0.0))
    throw InvalidArgument("memory_s must be > 0");
}

void validate_horizons(double central_s, double local_s, double individual_s) {
  if (!(central_s > local_s && local_s > individual_s && individual_s > 0.0)) {
    throw InvalidArgument("echelon horizons must satisfy central > local > individual > 0");
  }
}

namespace {

// Sum over airborne endpoints and axes of (d gain / d position)^2, by central
// differences with a 1 m step.
double squared_sensitivity(const RadioMap& map, const Position3& pi, const Position3& pj,
                           bool i_airborne, bool j_airborne) {
  double acc = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    if (i_airborne) {
      Position3 up = pi, down = pi;
      up[axis] += 1.0;
      down[axis] -= 1.0;
      const double s = 0.5 * (map.query(up, pj).mean_gain_db - map.query(down, pj).mean_gain_db);
      acc += s * s;
    }
    if (j_airborne) {
      Position3 up = pj, down = pj;
      up[axis] += 1.0;
      down[axis] -= 1.0;
      const double s = 0.5 * (map.query(pi, up).mean_gain_db - map.query(pi, down).mean_gain_db);
      acc += s * s;
    }
  }
  return acc;
}

// Plan at `target` plus the offset observed at `now`, decayed by the
// deviation process' reversion rate.
Position3 extrapolate(const WorldView& world, NodeId id, double target) {
  if (!world.is_aircraft(id)) return world.planned_position(id, target);
  const double now = world.now();
  const Position3 offset = world.realized_position(id, now) - world.planned_position(id, now);
  const double decay = std::exp(-world.deviation().reversion_rate * (target - now));
  Position3 p = world.planned_position(id, target) + decay * offset;
  p.z = std::max(0.0, p.z);
  return p;
}

}  // namespace

GainForecast forecast_gain(const EchelonView& view, const WorldView& world, NodeId i, NodeId j,
                           double target_time) {
  const double lead = target_time - world.now();
  if (!(lead >= 0.0) || lead > view.horizon_s) {
    throw OutOfRange(std::string(tier_name(view.tier)) + " horizon excludes lead time " +
                     std::to_string(lead) + " s");
  }
  const bool air_i = world.is_aircraft(i);
  const bool air_j = world.is_aircraft(j);
  const double sigma = world.deviation().sigma_dev;
  const double residual = view.map.residual_std_db();

  GainForecast f;
  f.lead_time = lead;
  switch (view.tier) {
    case Tier::kCentral: {
      const Position3 pi = world.planned_position(i, target_time);
      const Position3 pj = world.planned_position(j, target_time);
      f.mean_db = view.map.query(pi, pj).mean_gain_db;
      double var = residual * residual;
      if (sigma > 0.0 && (air_i || air_j)) {
        var += sigma * sigma * squared_sensitivity(view.map, pi, pj, air_i, air_j);
      }
      f.std_db = std::sqrt(var);
      return f;
    }
    case Tier::kLocal: {
      const double now = world.now();
      for (NodeId id : {i, j}) {
        if (distance(world.realized_position(id, now), *view.region_center) > *view.region_radius) {
          throw OutOfRegion("node " + std::to_string(id) + " outside the local region");
        }
      }
      const Position3 pi = extrapolate(world, i, target_time);
      const Position3 pj = extrapolate(world, j, target_time);
      f.mean_db = view.map.query(pi, pj).mean_gain_db;
      double var = residual * residual;
      if (sigma > 0.0 && lead > 0.0 && (air_i || air_j)) {
        const double rate = world.deviation().reversion_rate;
        const double spread = sigma * sigma * -std::expm1(-2.0 * rate * lead);
        var += spread * squared_sensitivity(view.map, pi, pj, air_i, air_j);
      }
      f.std_db = std::sqrt(var);
      return f;
    }
    case Tier::kIndividual: {
      if (*view.owner != i && *view.owner != j) {
        throw OutOfRegion("individual view of " + std::to_string(*view.owner) +
                          " cannot forecast a foreign link");
      }
      const double measured = world.true_gain_db(i, j, world.now());
      if (lead == 0.0) {
        f.mean_db = measured;
        f.std_db = 0.0;
        return f;
      }
      const double predicted =
          view.map.query(extrapolate(world, i, target_time), extrapolate(world, j, target_time))
              .mean_gain_db;
      const double w = std::exp(-lead / view.memory_s);
      f.mean_db = w * measured + (1.0 - w) * predicted;
      f.std_db = residual * std::sqrt(std::max(0.0, 1.0 - w * w));
      return f;
    }
  }
  return f;
}

std::string ErrorReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "tier,lead_time_s,rmse_db\n";
  for (std::size_t l = 0; l < lead_times.size(); ++l) {
    for (std::size_t t = 0; t < tiers.size(); ++t) {
      os << tier_name(tiers[t]) << ',' << lead_times[l] << ',';
      if (std::isnan(rmse_db[l][t])) {
        os << "nan";
      } else {
        os << rmse_db[l][t];
      }
      os << '\n';
    }
  }
  return os.str();
}

ErrorReport error_report(std::span<const EchelonView> views, const WorldView& world,
                         std::span<const double> lead_times, int n_trials, std::uint64_t seed) {
  if (n_trials < 1) throw InvalidArgument("n_trials must be >= 1");
  if (views.empty() || lead_times.empty()) throw InvalidArgument("need views and lead times");
  for (double l : lead_times) {
    if (!(l >= 0.0)) throw InvalidArgument("lead times must be >= 0");
  }

  const auto ids = world.node_ids();
  std::vector<NodeId> airborne;
  for (NodeId id : ids) {
    if (world.is_aircraft(id)) airborne.push_back(id);
  }
  if (airborne.empty() || ids.size() < 2) throw InvalidArgument("world needs an aircraft and a peer");

  const double max_lead = *std::max_element(lead_times.begin(), lead_times.end());
  const auto [span_lo, span_hi] = world.time_span();
  const double now_hi = span_hi - max_lead;
  if (now_hi < span_lo) throw InvalidArgument("lead times exceed the world's time span");

  ErrorReport report;
  report.trials = n_trials;
  report.lead_times.assign(lead_times.begin(), lead_times.end());
  for (const auto& v : views) report.tiers.push_back(v.tier);
  std::vector<std::vector<double>> sq(lead_times.size(), std::vector<double>(views.size(), 0.0));
  std::vector<std::vector<int>> count(lead_times.size(), std::vector<int>(views.size(), 0));
  report.squared_errors.assign(lead_times.size(), std::vector<std::vector<double>>(views.size()));

  Rng rng = make_rng(seed, Stream::kTrials);
  std::uniform_int_distribution<std::size_t> pick_air(0, airborne.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_any(0, ids.size() - 1);
  std::uniform_real_distribution<double> pick_now(span_lo, now_hi);

  for (int trial = 0; trial < n_trials; ++trial) {
    const NodeId i = airborne[pick_air(rng)];
    NodeId j = i;
    while (j == i) j = ids[pick_any(rng)];
    const WorldView w = world.at(pick_now(rng));
    if (w.realized_position(i, w.now()) == w.realized_position(j, w.now())) continue;
    const Position3 centre =
        midpoint(w.realized_position(i, w.now()), w.realized_position(j, w.now()));
    const double reach = distance(w.realized_position(i, w.now()), centre);

    for (std::size_t l = 0; l < lead_times.size(); ++l) {
      const double target = w.now() + lead_times[l];
      const double truth = w.true_gain_db(i, j, target);
      for (std::size_t v = 0; v < views.size(); ++v) {
        if (lead_times[l] > views[v].horizon_s) {
          report.squared_errors[l][v].push_back(std::numeric_limits<double>::quiet_NaN());
          continue;
        }
        EchelonView view = views[v];
        if (view.tier == Tier::kLocal) {
          view.region_center = centre;
          view.region_radius = std::max(*view.region_radius, reach + 1.0);
        } else if (view.tier == Tier::kIndividual) {
          view.owner = i;
        }
        const double err = forecast_gain(view, w, i, j, target).mean_db - truth;
        sq[l][v] += err * err;
        count[l][v] += 1;
        report.squared_errors[l][v].push_back(err * err);
      }
    }
  }

  report.rmse_db.assign(lead_times.size(),
                        std::vector<double>(views.size(), std::numeric_limits<double>::quiet_NaN()));
  for (std::size_t l = 0; l < lead_times.size(); ++l) {
    for (std::size_t v = 0; v < views.size(); ++v) {
      if (count[l][v] > 0) report.rmse_db[l][v] = std::sqrt(sq[l][v] / count[l][v]);
    }
  }
  return report;
}

}  // namespace aeris
