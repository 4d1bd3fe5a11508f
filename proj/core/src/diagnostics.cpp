#include "gradflux/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace gradflux {

Trajectory to_trajectory(const SemigroupRun& run, std::string label) {
  Trajectory t;
  t.label = std::move(label);
  for (const auto& s : run.snapshots) {
    TrajSnapshot ts;
    ts.t = s.t;
    ts.u = s.u;
    ts.theta = s.theta;
    ts.mass = s.mass;
    ts.tv = s.tv;
    ts.plateau_count = s.state.plateau_count();
    t.snaps.push_back(std::move(ts));
  }
  return t;
}

Trajectory to_trajectory(const GridRun& run, std::string label) {
  Trajectory t;
  t.label = std::move(label);
  for (const auto& s : run.snapshots) {
    TrajSnapshot ts;
    ts.t = s.state.t;
    ts.u = grid_to_profile(s.state);
    ts.theta = grid_theta_field(s.state, s.theta_faces);
    ts.mass = s.mass;
    ts.tv = grid_total_variation(s.state);
    t.snaps.push_back(std::move(ts));
  }
  return t;
}

std::vector<SeriesPoint> contraction_gap(const Trajectory& traj_u,
                                         const Trajectory& traj_v) {
  if (traj_u.snaps.size() != traj_v.snaps.size())
    throw SnapshotMismatch("trajectories have different snapshot counts");
  std::vector<SeriesPoint> out;
  double d0 = 0.0;
  for (std::size_t i = 0; i < traj_u.snaps.size(); ++i) {
    const auto& a = traj_u.snaps[i];
    const auto& b = traj_v.snaps[i];
    if (std::abs(a.t - b.t) > 1e-12)
      throw SnapshotMismatch("trajectories have different snapshot times");
    double d = l1_distance(a.u, b.u);
    if (i == 0) d0 = d;
    out.push_back({a.t, d - d0});
  }
  return out;
}

std::vector<SeriesPoint> semigroup_defect(const Trajectory& traj,
                                          const FluxPair& fp,
                                          double h_reference) {
  if (traj.snaps.size() < 2)
    throw SnapshotMismatch("defect needs at least two snapshots");
  std::vector<SeriesPoint> out;
  for (std::size_t i = 0; i + 1 < traj.snaps.size(); ++i) {
    const auto& a = traj.snaps[i];
    const auto& b = traj.snaps[i + 1];
    double dt = b.t - a.t;
    if (!(dt > 0.0)) throw SnapshotMismatch("snapshot times not increasing");
    FrontState restart = init_fronts(a.u, fp, h_reference);
    advance_to(restart, fp, dt);
    Profile evolved = snapshot_to_profile(restart);
    out.push_back({a.t, l1_distance(evolved, b.u) / dt});
  }
  return out;
}

DiagnosticsReport structural_checks(const Trajectory& traj,
                                    const DiagnosticsThresholds& th) {
  if (traj.snaps.size() < 2)
    throw SnapshotMismatch("structural checks need at least two snapshots");
  DiagnosticsReport r;
  r.scenario = traj.label;
  for (const auto& s : traj.snaps) {
    r.times.push_back(s.t);
    r.tv_series.push_back(s.tv);
    r.mass_series.push_back(s.mass);
    r.plateau_series.push_back(s.plateau_count);
    r.theta_jump_series.push_back(
        th.theta_jump_scale > 0.0 ? theta_discontinuity(s.theta, th.theta_jump_scale)
                                  : 0.0);
  }
  r.tv_nonincreasing = true;
  for (std::size_t i = 0; i + 1 < r.tv_series.size(); ++i)
    if (r.tv_series[i + 1] > r.tv_series[i] + th.tv_slack)
      r.tv_nonincreasing = false;
  r.plateau_nonincreasing = true;
  for (std::size_t i = 0; i + 1 < r.plateau_series.size(); ++i) {
    if (r.plateau_series[i] < 0 || r.plateau_series[i + 1] < 0) continue;
    if (r.plateau_series[i + 1] > r.plateau_series[i])
      r.plateau_nonincreasing = false;
  }
  r.conservation_ok = true;
  if (th.conservation_per_unit_time > 0.0) {
    double span = r.times.back() - r.times.front();
    double budget = th.conservation_per_unit_time * std::max(span, 1e-30);
    for (double m : r.mass_series)
      if (std::abs(m - r.mass_series.front()) > budget) r.conservation_ok = false;
  }
  r.theta_continuous = true;
  if (th.theta_jump_scale > 0.0) {
    // switch continuity is a t > 0 property: the initial datum may carry a
    // one-quantum plateau whose affine ramp is below the window scale
    for (std::size_t i = 1; i < r.theta_jump_series.size(); ++i)
      if (r.theta_jump_series[i] > th.theta_jump_max) r.theta_continuous = false;
  }
  return r;
}

FrontCheck check_fronts(const FrontState& s, const FluxPair& fp, int n_scan) {
  FrontCheck out;
  for (int i = 0; i < s.n_fronts(); ++i) {
    double ul = s.front_u_left(i, s.time);
    double ur = s.front_u_right(i, s.time);
    if (ul == ur) continue;
    const Flux& h = branch_flux(fp, branch_for(ul, ur));
    double rh = (h(ur) - h(ul)) / (ur - ul);
    out.max_rh_residual = std::max(
        out.max_rh_residual, std::abs(rh - s.fronts[std::size_t(i)].speed));
    ++out.fronts_checked;
    double tol = 1e-12;
    if (s.fronts[std::size_t(i)].kind == WaveKind::RarefactionStep) {
      // an approximate rarefaction front is admissible up to its own
      // chord-slope spread, which is first order in the jump size
      double mid = 0.5 * (ul + ur);
      double d2 = std::abs(h.d2(mid));
      tol = std::max(1e-12, 0.75 * d2 * std::abs(ur - ul));
    }
    if (!liu_admissible(ul, ur, h, n_scan, tol)) out.all_admissible = false;
  }
  return out;
}

}  // namespace gradflux
