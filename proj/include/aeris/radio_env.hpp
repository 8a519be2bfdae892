#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "aeris/geometry.hpp"
#include "aeris/scene.hpp"
#include "aeris/trajectory.hpp"

namespace aeris {

// Log-distance path loss with a LoS/NLoS exponent switch and log-normal
// shadowing. Defaults are configuration, not measured values.
struct PathLossParams {
  double pl0_db = 40.0;
  double d0 = 1.0;
  double n_los = 2.0;
  double n_nlos = 3.2;
  // Links with both ends at or below ground_level_m use at least n_ground.
  double n_ground = 3.5;
  double ground_level_m = 10.0;
  double sigma_sh_los_db = 4.0;
  double sigma_sh_nlos_db = 8.0;
  double decorr_dist = 50.0;
  double noise_dbm = -100.0;

  void validate() const;
};

struct LargeScaleStats {
  double mean_gain_db = 0.0;
  double shadow_std_db = 0.0;
  double los_prob = 1.0;
};

struct ChannelSample {
  Position3 tx;
  Position3 rx;
  double gain_db = 0.0;
  bool los = true;  // geometry flag recorded by the sampling platform

  friend bool operator==(const ChannelSample&, const ChannelSample&) = default;
};

// Unit-variance, zero-mean Gaussian random field over R^3 whose covariance is
// exp(-|delta| / decorr_dist). Realized as a sum of random Fourier features:
// for an exponential kernel the spectral law is the multivariate Cauchy
// distribution, drawn as z / |w| with z ~ N(0, I3), w ~ N(0, 1).
class ShadowField {
 public:
  static constexpr int kDefaultFeatures = 128;

  ShadowField(std::uint64_t seed, double decorr_dist, int n_features = kDefaultFeatures);

  double operator()(const Position3& p) const;

 private:
  struct Feature {
    double kx, ky, kz, phase;
  };
  std::vector<Feature> features_;
  double scale_;
};

// Ground-truth large-scale channel. Immutable; gain_db is a pure function.
class GroundTruthChannel {
 public:
  GroundTruthChannel(Scene scene, PathLossParams params, std::uint64_t shadow_seed);

  // Throws DegenerateLink when tx == rx.
  double gain_db(const Position3& tx, const Position3& rx) const;
  bool los(const Position3& tx, const Position3& rx) const;
  // Deterministic component only: -(pl0 + 10 n log10(max(d, d0)/d0)).
  double deterministic_gain_db(double d, bool los, bool ground_level = false) const;
  double shadow_db(const Position3& tx, const Position3& rx, bool los) const;

  const Scene& scene() const { return scene_; }
  const PathLossParams& params() const { return params_; }

 private:
  Scene scene_;
  PathLossParams params_;
  ShadowField field_;
};

// Convenience wrapper building the shadow field from the seed on every call.
double true_gain_db(const Scene& scene, const PathLossParams& params, std::uint64_t shadow_seed,
                    const Position3& tx, const Position3& rx);

// One sample per (aircraft, time, peer) at times t_begin + k*period,
// k = 1..floor((t_end - t_begin)/period). Coincident tx/rx pairs are skipped.
std::vector<ChannelSample> sample_along(std::span<const Trajectory4D> trajs,
                                        const GroundTruthChannel& channel, double t_begin,
                                        double t_end, double sampling_period,
                                        std::span<const Position3> peer_points);

// Same schedule, sampled along flown paths instead of the plans.
std::vector<ChannelSample> sample_along(std::span<const Trajectory4D> trajs,
                                        std::span<const RealizedPath> flown,
                                        const GroundTruthChannel& channel, double t_begin,
                                        double t_end, double sampling_period,
                                        std::span<const Position3> peer_points);

// Air-to-air samples: every unordered aircraft pair at each sampling time.
std::vector<ChannelSample> sample_aircraft_pairs(std::span<const Trajectory4D> trajs,
                                                 std::span<const RealizedPath> flown,
                                                 const GroundTruthChannel& channel,
                                                 double t_begin, double t_end,
                                                 double sampling_period);

// k-NN inverse-distance-weighted interpolation over the 6D (tx, rx)
// coordinate. Every sample is indexed in both orientations (the channel is
// reciprocal) and the sample set is canonicalized on build, so results do not
// depend on insertion order.
class RadioMap {
 public:
  const std::vector<ChannelSample>& samples() const;
  double idw_exponent() const;
  int k_neighbors() const;
  double built_at() const;
  double residual_std_db() const;
  std::size_t size() const { return samples().size(); }

  LargeScaleStats query(const Position3& tx, const Position3& rx) const;

  struct Index;  // opaque spatial index

 private:
  std::shared_ptr<const Index> index_;
  friend RadioMap build_map(std::vector<ChannelSample>, double, int, double, double);
};

// Throws EmptySampleSet on empty input and InvalidArgument on bad parameters.
RadioMap build_map(std::vector<ChannelSample> samples, double idw_exponent = 2.0,
                   int k_neighbors = 8, double built_at = 0.0, double residual_std_db = 4.0);

inline LargeScaleStats query(const RadioMap& map, const Position3& tx, const Position3& rx) {
  return map.query(tx, rx);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace aeris
