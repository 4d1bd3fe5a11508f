#pragma once

#include <string>
#include <vector>

#include "gradflux/semigroup.hpp"
#include "gradflux/trajectory.hpp"
#include "gradflux/viscous.hpp"

namespace gradflux {

Trajectory to_trajectory(const SemigroupRun& run, std::string label = "semigroup");
Trajectory to_trajectory(const GridRun& run, std::string label = "viscous");

struct SeriesPoint {
  double t;
  double value;
};

/// (t, ||u(t)-v(t)||_1 - ||u(0)-v(0)||_1); nonpositive up to O(h) for
/// contractive dynamics.
std::vector<SeriesPoint> contraction_gap(const Trajectory& traj_u,
                                         const Trajectory& traj_v);

/// Forward L1 difference quotients against a one-step semigroup restart:
/// for each snapshot time tau, ||traj(tau+dt) - S_dt traj(tau)||_1 / dt.
/// Near-zero series certifies the trajectory as a semigroup trajectory.
std::vector<SeriesPoint> semigroup_defect(const Trajectory& traj,
                                          const FluxPair& fp,
                                          double h_reference);

struct DiagnosticsThresholds {
  double tv_slack = 1e-12;
  double conservation_per_unit_time = 0.0;  // 0: skip the check
  double theta_jump_scale = 0.0;            // 0: skip the check
  double theta_jump_max = 0.6;
};

struct DiagnosticsReport {
  std::string scenario;
  std::vector<double> times;
  std::vector<double> tv_series;
  std::vector<double> mass_series;
  std::vector<int> plateau_series;
  std::vector<double> theta_jump_series;
  bool tv_nonincreasing = false;
  bool plateau_nonincreasing = false;
  bool conservation_ok = false;
  bool theta_continuous = false;
  bool all_pass() const {
    return tv_nonincreasing && plateau_nonincreasing && conservation_ok &&
           theta_continuous;
  }
};

/// Fills the per-snapshot series and verdict flags for one trajectory.
DiagnosticsReport structural_checks(const Trajectory& traj,
                                    const DiagnosticsThresholds& th = {});

struct FrontCheck {
  double max_rh_residual = 0.0;
  bool all_admissible = true;
  int fronts_checked = 0;
};

/// Verifies every front of a state: stored speed against the jump relation
/// for its branch, and chord-slope admissibility (shocks strictly,
/// rarefaction steps within their h-order slope spread).
FrontCheck check_fronts(const FrontState& s, const FluxPair& fp,
                        int n_scan = 1000);

}  // namespace gradflux
