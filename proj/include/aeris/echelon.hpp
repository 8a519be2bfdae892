#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aeris/gain_forecast.hpp"
#include "aeris/geometry.hpp"
#include "aeris/radio_env.hpp"
#include "aeris/scene.hpp"
#include "aeris/trajectory.hpp"

namespace aeris {

enum class Tier { kCentral, kLocal, kIndividual };
enum class TrajectorySource { kPlanned, kRealizedWithinRegion, kSelfOnly };
enum class MeasurementAccess { kNone, kOwnLinksInstantaneous };

const char* tier_name(Tier tier);

// Snapshot of the world a forecaster may consult. Non-owning: the referenced
// plans, flown paths, ground nodes and channel must outlive the view.
class WorldView {
 public:
  WorldView(const GroundTruthChannel& truth, std::span<const Trajectory4D> plans,
            std::span<const RealizedPath> flown, std::span<const GroundNode> ground,
            DeviationParams deviation, double now);

  double now() const { return now_; }
  // [first, last] instant covered by the flown paths (plans when none).
  std::pair<double, double> time_span() const;
  WorldView at(double now) const;

  bool has_node(NodeId id) const { return index_.count(id) != 0; }
  bool is_aircraft(NodeId id) const;
  std::vector<NodeId> node_ids() const;

  Position3 planned_position(NodeId id, double t) const;
  Position3 realized_position(NodeId id, double t) const;
  // Large-scale ground truth between the realized positions at time t.
  double true_gain_db(NodeId i, NodeId j, double t) const;

  const GroundTruthChannel& truth() const { return *truth_; }
  const DeviationParams& deviation() const { return deviation_; }

 private:
  struct Entry {
    bool aircraft;
    std::size_t index;
  };
  const Entry& entry(NodeId id) const;

  const GroundTruthChannel* truth_;
  std::span<const Trajectory4D> plans_;
  std::span<const RealizedPath> flown_;
  std::span<const GroundNode> ground_;
  DeviationParams deviation_;
  double now_;
  std::unordered_map<NodeId, Entry> index_;
};

// What one echelon knows. Central: every plan plus a possibly stale map.
// Local: realized positions inside its region plus the fresh map. Individual:
// its own links, measured instantaneously.
struct EchelonView {
  Tier tier = Tier::kCentral;
  RadioMap map;
  double staleness_s = 0.0;
  double horizon_s = 600.0;
  std::optional<Position3> region_center;  // local only
  std::optional<double> region_radius;     // local only
  std::optional<NodeId> owner;             // individual only
  // Individual tier: e-folding time of the measurement's weight.
  double memory_s = 1.0;

  static EchelonView central(RadioMap map, double staleness_s, double horizon_s);
  static EchelonView local(RadioMap map, double staleness_s, double horizon_s, Position3 center,
                           double radius);
  static EchelonView individual(RadioMap map, NodeId owner, double horizon_s, double memory_s);

  TrajectorySource trajectory_source() const;
  MeasurementAccess measurement_access() const;
  void validate() const;
};

// Throws OutOfRange when the lead time is negative or beyond the view's
// horizon, OutOfRegion when a local view is asked about a link outside its
// region or an individual view about a link it is not part of.
GainForecast forecast_gain(const EchelonView& view, const WorldView& world, NodeId i, NodeId j,
                           double target_time);

// Validates central > local > individual horizons.
void validate_horizons(double central_s, double local_s, double individual_s);

struct ErrorReport {
  std::vector<Tier> tiers;
  std::vector<double> lead_times;
  // rmse[lead][tier]; NaN where the lead exceeds the tier's horizon.
  std::vector<std::vector<double>> rmse_db;
  // squared_errors[lead][tier][k]: the k-th evaluated trial, aligned across
  // tiers (NaN where the lead exceeds the tier's horizon).
  std::vector<std::vector<std::vector<double>>> squared_errors;
  int trials = 0;

  std::string to_csv() const;  // tier,lead_time_s,rmse_db
};

// Monte-Carlo forecast error per tier and lead time. Each trial draws a link
// (at least one airborne endpoint) and a "now"; local views are re-centred on
// the link and individual views owned by its first endpoint. The truth is the
// ground-truth gain at the realized positions at the target time.
ErrorReport error_report(std::span<const EchelonView> views, const WorldView& world,
                         std::span<const double> lead_times, int n_trials, std::uint64_t seed);

}  // namespace aeris
