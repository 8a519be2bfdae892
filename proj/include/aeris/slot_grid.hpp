#pragma once

#include <cmath>

#include "aeris/error.hpp"

namespace aeris {

// Uniform discretization of the scenario horizon: slot k covers
// [t0 + k*dt, t0 + (k+1)*dt).
struct SlotGrid {
  double t0 = 0.0;
  double dt = 0.1;
  int n_slots = 1;

  friend bool operator==(const SlotGrid&, const SlotGrid&) = default;

  double time(int slot) const { return t0 + slot * dt; }
  double horizon() const { return n_slots * dt; }
  double end_time() const { return t0 + horizon(); }
  bool contains(int slot) const { return slot >= 0 && slot < n_slots; }
  // Number of whole slots spanned by a duration (rounded to the nearest slot
  // to absorb representation error in e.g. 2.0 / 0.1).
  int slots_for(double seconds) const {
    return static_cast<int>(std::floor(seconds / dt + 1e-9));
  }

  void validate() const {
    if (!std::isfinite(t0) || !(dt > 0) || !std::isfinite(dt) || n_slots < 1) {
      throw InvalidArgument("slot grid requires finite t0, dt > 0 and n_slots >= 1");
    }
  }
};

}  // namespace aeris
