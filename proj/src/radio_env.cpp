#include "aeris/radio_env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <tuple>
#include <utility>

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include "aeris/error.hpp"
#include "aeris/random.hpp"

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace aeris {

void PathLossParams::validate() const {
  if (!(d0 > 0)) throw InvalidArgument("d0 must be > 0");
  if (!(n_los > 0 && n_nlos > 0 && n_ground > 0)) throw InvalidArgument("path-loss exponents must be > 0");
  if (!(ground_level_m >= 0)) throw InvalidArgument("ground_level_m must be >= 0");
  if (!(sigma_sh_los_db >= 0 && sigma_sh_nlos_db >= 0))
    throw InvalidArgument("shadowing std must be >= 0");
  if (!(decorr_dist > 0)) throw InvalidArgument("decorr_dist must be > 0");
  if (!std::isfinite(pl0_db) || !std::isfinite(noise_dbm))
    throw InvalidArgument("pl0_db and noise_dbm must be finite");
}

ShadowField::ShadowField(std::uint64_t seed, double decorr_dist, int n_features)
    : scale_(std::sqrt(2.0 / n_features)) {
  if (!(decorr_dist > 0)) throw InvalidArgument("decorr_dist must be > 0");
  if (n_features < 1) throw InvalidArgument("n_features must be >= 1");
  Rng rng = make_rng(seed, Stream::kShadow);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  features_.reserve(n_features);
  for (int i = 0; i < n_features; ++i) {
    const double zx = normal(rng), zy = normal(rng), zz = normal(rng);
    double w = 0.0;
    while (w == 0.0) w = std::abs(normal(rng));
    const double s = 1.0 / (w * decorr_dist);
    features_.push_back({zx * s, zy * s, zz * s, phase(rng)});
  }
}

double ShadowField::operator()(const Position3& p) const {
  double acc = 0.0;
  for (const auto& f : features_) acc += std::cos(f.kx * p.x + f.ky * p.y + f.kz * p.z + f.phase);
  return scale_ * acc;
}

GroundTruthChannel::GroundTruthChannel(Scene scene, PathLossParams params,
                                       std::uint64_t shadow_seed)
    : scene_(std::move(scene)),
      params_(params),
      field_(shadow_seed, params.decorr_dist) {
  params_.validate();
}

bool GroundTruthChannel::los(const Position3& tx, const Position3& rx) const {
  return !los_blocked(scene_, tx, rx);
}

double GroundTruthChannel::deterministic_gain_db(double d, bool los, bool ground_level) const {
  double n = los ? params_.n_los : params_.n_nlos;
  if (ground_level) n = std::max(n, params_.n_ground);
  return -(params_.pl0_db + 10.0 * n * std::log10(std::max(d, params_.d0) / params_.d0));
}

double GroundTruthChannel::shadow_db(const Position3& tx, const Position3& rx, bool los) const {
  const double sigma = los ? params_.sigma_sh_los_db : params_.sigma_sh_nlos_db;
  if (sigma == 0.0) return 0.0;
  return sigma * field_(midpoint(tx, rx));
}

double GroundTruthChannel::gain_db(const Position3& tx, const Position3& rx) const {
  if (tx == rx) throw DegenerateLink("transmitter and receiver coincide");
  const bool is_los = los(tx, rx);
  const bool ground_level = tx.z <= params_.ground_level_m && rx.z <= params_.ground_level_m;
  return deterministic_gain_db(distance(tx, rx), is_los, ground_level) - shadow_db(tx, rx, is_los);
}

double true_gain_db(const Scene& scene, const PathLossParams& params, std::uint64_t shadow_seed,
                    const Position3& tx, const Position3& rx) {
  return GroundTruthChannel(scene, params, shadow_seed).gain_db(tx, rx);
}

namespace {

template <class PositionFn>
std::vector<ChannelSample> sample_schedule(std::size_t n_aircraft, PositionFn&& pos,
                                           const GroundTruthChannel& channel, double t_begin,
                                           double t_end, double period,
                                           std::span<const Position3> peers) {
  if (!(period > 0)) throw InvalidArgument("sampling_period must be > 0");
  std::vector<ChannelSample> out;
  const auto n_times = static_cast<long>(std::floor((t_end - t_begin) / period));
  for (std::size_t a = 0; a < n_aircraft; ++a) {
    for (long k = 1; k <= n_times; ++k) {
      const double t = t_begin + static_cast<double>(k) * period;
      const Position3 tx = pos(a, t);
      for (const auto& rx : peers) {
        if (tx == rx) continue;
        out.push_back({tx, rx, channel.gain_db(tx, rx), channel.los(tx, rx)});
      }
    }
  }
  return out;
}

}  // namespace

std::vector<ChannelSample> sample_along(std::span<const Trajectory4D> trajs,
                                        const GroundTruthChannel& channel, double t_begin,
                                        double t_end, double sampling_period,
                                        std::span<const Position3> peer_points) {
  return sample_schedule(
      trajs.size(), [&](std::size_t a, double t) { return position_at(trajs[a], t); }, channel,
      t_begin, t_end, sampling_period, peer_points);
}

std::vector<ChannelSample> sample_along(std::span<const Trajectory4D> trajs,
                                        std::span<const RealizedPath> flown,
                                        const GroundTruthChannel& channel, double t_begin,
                                        double t_end, double sampling_period,
                                        std::span<const Position3> peer_points) {
  if (flown.size() != trajs.size()) throw InvalidArgument("one flown path per trajectory required");
  return sample_schedule(
      trajs.size(),
      [&](std::size_t a, double t) { return realized_position_at(trajs[a], flown[a], t); },
      channel, t_begin, t_end, sampling_period, peer_points);
}

std::vector<ChannelSample> sample_aircraft_pairs(std::span<const Trajectory4D> trajs,
                                                 std::span<const RealizedPath> flown,
                                                 const GroundTruthChannel& channel,
                                                 double t_begin, double t_end,
                                                 double sampling_period) {
  if (!(sampling_period > 0)) throw InvalidArgument("sampling_period must be > 0");
  if (flown.size() != trajs.size()) throw InvalidArgument("one flown path per trajectory required");
  std::vector<ChannelSample> out;
  const auto n_times = static_cast<long>(std::floor((t_end - t_begin) / sampling_period));
  for (long k = 1; k <= n_times; ++k) {
    const double t = t_begin + static_cast<double>(k) * sampling_period;
    for (std::size_t a = 0; a < trajs.size(); ++a) {
      const Position3 pa = realized_position_at(trajs[a], flown[a], t);
      for (std::size_t b = a + 1; b < trajs.size(); ++b) {
        const Position3 pb = realized_position_at(trajs[b], flown[b], t);
        if (pa == pb) continue;
        out.push_back({pa, pb, channel.gain_db(pa, pb), channel.los(pa, pb)});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// RadioMap

using Point6 = bg::model::point<double, 6, bg::cs::cartesian>;
using Entry = std::pair<Point6, std::uint32_t>;

struct RadioMap::Index {
  std::vector<ChannelSample> samples;
  double idw_exponent = 2.0;
  int k = 8;
  double built_at = 0.0;
  double residual_std_db = 4.0;
  bgi::rtree<Entry, bgi::rstar<16>> tree;
};

namespace {

Point6 make_point(const Position3& a, const Position3& b) {
  Point6 p;
  bg::set<0>(p, a.x);
  bg::set<1>(p, a.y);
  bg::set<2>(p, a.z);
  bg::set<3>(p, b.x);
  bg::set<4>(p, b.y);
  bg::set<5>(p, b.z);
  return p;
}

double squared_distance6(const Point6& p, const Position3& a, const Position3& b) {
  const double d[6] = {bg::get<0>(p) - a.x, bg::get<1>(p) - a.y, bg::get<2>(p) - a.z,
                       bg::get<3>(p) - b.x, bg::get<4>(p) - b.y, bg::get<5>(p) - b.z};
  double s = 0.0;
  for (double v : d) s += v * v;
  return s;
}

auto sample_key(const ChannelSample& s) {
  return std::make_tuple(s.tx.x, s.tx.y, s.tx.z, s.rx.x, s.rx.y, s.rx.z, s.gain_db, s.los);
}

struct Neighbor {
  double d2;
  std::uint32_t index;
};

}  // namespace

const std::vector<ChannelSample>& RadioMap::samples() const { return index_->samples; }
double RadioMap::idw_exponent() const { return index_->idw_exponent; }
int RadioMap::k_neighbors() const { return index_->k; }
double RadioMap::built_at() const { return index_->built_at; }
double RadioMap::residual_std_db() const { return index_->residual_std_db; }

RadioMap build_map(std::vector<ChannelSample> samples, double idw_exponent, int k_neighbors,
                   double built_at, double residual_std_db) {
  if (samples.empty()) throw EmptySampleSet("radio map needs at least one sample");
  if (k_neighbors < 1) throw InvalidArgument("k_neighbors must be >= 1");
  if (!(idw_exponent > 0)) throw InvalidArgument("idw_exponent must be > 0");
  if (!(residual_std_db >= 0)) throw InvalidArgument("residual_std_db must be >= 0");
  for (const auto& s : samples) {
    if (!s.tx.finite() || !s.rx.finite() || !std::isfinite(s.gain_db))
      throw InvalidArgument("channel samples must be finite");
  }

  std::sort(samples.begin(), samples.end(),
            [](const ChannelSample& a, const ChannelSample& b) { return sample_key(a) < sample_key(b); });
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

  auto index = std::make_shared<RadioMap::Index>();
  index->idw_exponent = idw_exponent;
  index->k = k_neighbors;
  index->built_at = built_at;
  index->residual_std_db = residual_std_db;

  std::vector<Entry> entries;
  entries.reserve(2 * samples.size());
  for (std::uint32_t i = 0; i < samples.size(); ++i) {
    entries.emplace_back(make_point(samples[i].tx, samples[i].rx), i);
    if (samples[i].tx != samples[i].rx) {
      entries.emplace_back(make_point(samples[i].rx, samples[i].tx), i);
    }
  }
  index->samples = std::move(samples);
  index->tree = bgi::rtree<Entry, bgi::rstar<16>>(entries.begin(), entries.end());

  RadioMap map;
  map.index_ = std::move(index);
  return map;
}

namespace {

// One-directional IDW estimate; returns {gain, los fraction}.
std::pair<double, double> idw_one_way(const RadioMap::Index& idx, const Position3& tx,
                                      const Position3& rx) {
  thread_local std::vector<Entry> found;
  thread_local std::vector<Neighbor> nbrs;
  found.clear();
  nbrs.clear();
  const Point6 q = make_point(tx, rx);
  idx.tree.query(bgi::nearest(q, static_cast<unsigned>(idx.k)), std::back_inserter(found));
  for (const auto& e : found) nbrs.push_back({squared_distance6(e.first, tx, rx), e.second});
  std::sort(nbrs.begin(), nbrs.end(), [](const Neighbor& a, const Neighbor& b) {
    return std::tie(a.d2, a.index) < std::tie(b.d2, b.index);
  });

  // Exact hit: average every coincident sample.
  if (!nbrs.empty() && nbrs.front().d2 == 0.0) {
    double g = 0.0, los = 0.0;
    int n = 0;
    for (const auto& nb : nbrs) {
      if (nb.d2 != 0.0) break;
      g += idx.samples[nb.index].gain_db;
      los += idx.samples[nb.index].los ? 1.0 : 0.0;
      ++n;
    }
    return {g / n, los / n};
  }

  const double half_p = 0.5 * idx.idw_exponent;
  double wsum = 0.0, gsum = 0.0, lsum = 0.0;
  for (const auto& nb : nbrs) {
    const double w = half_p == 1.0 ? 1.0 / nb.d2 : std::pow(nb.d2, -half_p);
    wsum += w;
    gsum += w * idx.samples[nb.index].gain_db;
    lsum += w * (idx.samples[nb.index].los ? 1.0 : 0.0);
  }
  return {gsum / wsum, lsum / wsum};
}

}  // namespace

LargeScaleStats RadioMap::query(const Position3& tx, const Position3& rx) const {
  const auto forward = idw_one_way(*index_, tx, rx);
  const auto backward = idw_one_way(*index_, rx, tx);
  LargeScaleStats s;
  s.mean_gain_db = 0.5 * (forward.first + backward.first);
  s.shadow_std_db = index_->residual_std_db;
  s.los_prob = std::clamp(0.5 * (forward.second + backward.second), 0.0, 1.0);
  return s;
}

}  // namespace aeris
