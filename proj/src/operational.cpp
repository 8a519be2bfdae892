#include "aeris/operational.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aeris/error.hpp"

namespace aeris {

void LinkBudget::validate() const {
  if (!(outage_eps > 0.0 && outage_eps < 1.0)) throw InvalidArgument("outage_eps must be in (0,1)");
  if (!std::isfinite(p_max_dbm)) throw InvalidArgument("p_max_dbm must be finite");
  if (!std::isfinite(snr_threshold_db) || !std::isfinite(noise_dbm))
    throw InvalidArgument("snr_threshold_db and noise_dbm must be finite");
}

double required_power_dbm(double mean_gain_db, const LinkBudget& budget) {
  // In dB: gamma + N - G - 10 log10(-ln(1 - eps)).
  const double fade_margin_db = -10.0 * std::log10(-std::log1p(-budget.outage_eps));
  return budget.snr_threshold_db + budget.noise_dbm - mean_gain_db + fade_margin_db;
}

double min_power_outage(double mean_gain_db, const LinkBudget& budget) {
  if (!std::isfinite(mean_gain_db)) throw InvalidArgument("mean gain must be finite");
  const double p = required_power_dbm(mean_gain_db, budget);
  if (p > budget.p_max_dbm) {
    throw ExceedsPMax("required " + std::to_string(p) + " dBm > p_max " +
                      std::to_string(budget.p_max_dbm) + " dBm");
  }
  return p;
}

double outage_probability(double power_dbm, double mean_gain_db, const LinkBudget& budget) {
  const double ratio_db = budget.snr_threshold_db + budget.noise_dbm - power_dbm - mean_gain_db;
  return -std::expm1(-db_to_linear(ratio_db));
}

double min_feasible_gain_db(const LinkBudget& budget) {
  // required_power_dbm is affine with slope -1 in the gain.
  return required_power_dbm(0.0, budget) - budget.p_max_dbm;
}

PowerDecision cap_power(double required_p_dbm, const Position3& tx,
                        std::span<const GroundNode> sensitive_nodes, double per_node_cap_dbm,
                        const GainFn& gain, double p_max_dbm) {
  if (!std::isfinite(per_node_cap_dbm)) throw InvalidArgument("per-node cap must be finite");
  if (required_p_dbm > p_max_dbm) return {};
  for (const auto& g : sensitive_nodes) {
    if (required_p_dbm + gain(tx, g.pos) > per_node_cap_dbm) return {};
  }
  return {required_p_dbm};
}

PowerDecision cap_power(double required_p_dbm, const Position3& tx,
                        std::span<const GroundNode> sensitive_nodes, double per_node_cap_dbm,
                        const RadioMap& map, double p_max_dbm) {
  return cap_power(
      required_p_dbm, tx, sensitive_nodes, per_node_cap_dbm,
      [&map](const Position3& a, const Position3& b) { return map.query(a, b).mean_gain_db; },
      p_max_dbm);
}

PowerDecision PowerPolicy::lookup(double measured_gain_db) const {
  if (power_dbm.empty() || measured_gain_db < edges_db.front()) return {};
  auto it = std::upper_bound(edges_db.begin(), edges_db.end(), measured_gain_db);
  auto bin = static_cast<int>(it - edges_db.begin()) - 1;
  bin = std::clamp(bin, 0, bin_count() - 1);
  return {power_dbm[bin]};
}

PowerPolicy build_policy(const GainForecast& forecast, const LinkBudget& budget, int n_bins) {
  if (n_bins < 1) throw InvalidArgument("n_bins must be >= 1");
  if (!(forecast.std_db >= 0.0)) throw InvalidArgument("forecast std must be >= 0");
  budget.validate();
  PowerPolicy policy;
  const int bins = forecast.std_db == 0.0 ? 1 : n_bins;
  const double lo = forecast.mean_db - 4.0 * forecast.std_db;
  const double hi = forecast.mean_db + 4.0 * forecast.std_db;
  policy.edges_db.resize(bins + 1);
  for (int b = 0; b <= bins; ++b) {
    policy.edges_db[b] = b == bins ? hi : lo + (hi - lo) * static_cast<double>(b) / bins;
  }
  policy.power_dbm.resize(bins);
  for (int b = 0; b < bins; ++b) {
    const double p = required_power_dbm(policy.edges_db[b], budget);
    if (p <= budget.p_max_dbm) policy.power_dbm[b] = p;
  }
  return policy;
}

}  // namespace aeris
