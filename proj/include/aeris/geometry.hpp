#pragma once

#include <cmath>
#include <cstdint>
#include <tuple>

namespace aeris {

using NodeId = std::int32_t;

// Local east-north-up frame, meters.
struct Position3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Position3&, const Position3&) = default;

  Position3& operator+=(const Position3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
  double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }
};

inline Position3 operator+(Position3 a, const Position3& b) { return a += b; }
inline Position3 operator-(const Position3& a, const Position3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Position3 operator*(double s, const Position3& a) { return {s * a.x, s * a.y, s * a.z}; }

inline double dot(const Position3& a, const Position3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double norm(const Position3& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Position3& a, const Position3& b) { return norm(a - b); }

// Component-wise midpoint. Addition is commutative in IEEE arithmetic, so
// midpoint(a, b) == midpoint(b, a) bit for bit.
inline Position3 midpoint(const Position3& a, const Position3& b) {
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y), 0.5 * (a.z + b.z)};
}

inline bool lex_less(const Position3& a, const Position3& b) {
  return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
}

// Axis-aligned box. Invariant: hi strictly greater than lo on every axis.
struct ObstacleBox {
  Position3 lo;
  Position3 hi;

  friend bool operator==(const ObstacleBox&, const ObstacleBox&) = default;

  bool valid() const {
    return lo.finite() && hi.finite() && hi.x > lo.x && hi.y > lo.y && hi.z > lo.z;
  }
  // Closed containment.
  bool contains(const Position3& p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z &&
           p.z <= hi.z;
  }
  bool strictly_contains(const Position3& p) const {
    return p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y && p.z > lo.z && p.z < hi.z;
  }
  bool contains(const ObstacleBox& b) const { return contains(b.lo) && contains(b.hi); }
};

}  // namespace aeris
