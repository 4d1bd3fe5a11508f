#pragma once

#include <string>
#include <vector>

#include "gradflux/profile.hpp"

namespace gradflux {

/// Solver-agnostic view of one snapshot: the state, its switch field, and
/// the scalar bookkeeping series.
struct TrajSnapshot {
  double t = 0.0;
  Profile u;
  ThetaField theta;
  double mass = 0.0;
  double tv = 0.0;
  int plateau_count = -1;  // -1 when the solver does not track plateaus
};

struct Trajectory {
  std::string label;
  std::vector<TrajSnapshot> snaps;
};

}  // namespace gradflux
