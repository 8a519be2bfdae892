#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "aeris/gain_forecast.hpp"
#include "aeris/geometry.hpp"
#include "aeris/radio_env.hpp"
#include "aeris/scene.hpp"

namespace aeris {

struct LinkBudget {
  double snr_threshold_db = 10.0;
  double outage_eps = 0.01;
  double noise_dbm = -100.0;
  double p_max_dbm = 30.0;

  void validate() const;
};

// Transmit power (dBm) at which a link of large-scale gain G meets the outage
// target under unit-mean exponential (Rayleigh) fading h:
//   P(p G h / N < gamma) = 1 - exp(-gamma N / (p G)) = eps
//   => p = gamma N / (G * -ln(1 - eps)).
// No p_max check.
double required_power_dbm(double mean_gain_db, const LinkBudget& budget);

// Same value; throws ExceedsPMax when it is above budget.p_max_dbm.
double min_power_outage(double mean_gain_db, const LinkBudget& budget);

// P(SNR < gamma) at the given power and large-scale gain.
double outage_probability(double power_dbm, double mean_gain_db, const LinkBudget& budget);

// Largest large-scale gain at which even p_max misses the outage target; links
// need gain >= this to be usable.
double min_feasible_gain_db(const LinkBudget& budget);

struct PowerDecision {
  std::optional<double> power_dbm;  // nullopt means defer
  bool deferred() const { return !power_dbm.has_value(); }
};

using GainFn = std::function<double(const Position3& tx, const Position3& rx)>;

// Transmit at required_p_dbm iff it is within p_max and, for every sensitive
// node g, required_p_dbm + gain(tx, g) <= cap (equality admitted). Otherwise
// defer.
PowerDecision cap_power(double required_p_dbm, const Position3& tx,
                        std::span<const GroundNode> sensitive_nodes, double per_node_cap_dbm,
                        const GainFn& gain, double p_max_dbm);

// Map-backed variant: gains to sensitive nodes come from map queries.
PowerDecision cap_power(double required_p_dbm, const Position3& tx,
                        std::span<const GroundNode> sensitive_nodes, double per_node_cap_dbm,
                        const RadioMap& map, double p_max_dbm);

// Precomputed measured-gain -> power table. Bins are contiguous; each bin's
// power is the outage-compliant minimum at its lower edge, so any measurement
// inside the bin is served conservatively.
struct PowerPolicy {
  std::vector<double> edges_db;                // bin_count() + 1 ascending edges
  std::vector<std::optional<double>> power_dbm;  // per bin; nullopt = defer

  int bin_count() const { return static_cast<int>(power_dbm.size()); }
  // Below the first edge: defer. Above the last: last bin.
  PowerDecision lookup(double measured_gain_db) const;
};

// Bins span mean +/- 4 std. With std == 0 a single bin [mean, mean] results.
PowerPolicy build_policy(const GainForecast& forecast, const LinkBudget& budget, int n_bins);

}  // namespace aeris
