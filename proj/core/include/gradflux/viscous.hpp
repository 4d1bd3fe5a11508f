#pragma once

#include <vector>

#include "gradflux/flux.hpp"
#include "gradflux/profile.hpp"

namespace gradflux {

/// Uniform-grid state carrying cell values of u at time t.
struct GridState {
  Domain domain;
  double dx = 0.0;
  double t = 0.0;
  std::vector<double> u;  // n cells, centers at x_min + (j+1/2) dx
};

struct ViscousParams {
  double epsilon = 1e-3;  // switch-smoothing width (gradient units)
  double delta = 1e-3;    // viscosity
  double cfl = 0.45;
  double t_end = 1.0;
  std::vector<double> snapshot_times;
  // Blow-up guard reference: updates whose max |u| exceed 10x this value
  // abort with BlowUp.  Filled from the initial data by run_viscous.
  double u_ref = 0.0;
};

struct GridSnapshot {
  GridState state;
  std::vector<double> theta_faces;  // theta_eps at interior faces
  double mass = 0.0;
};

/// Trajectory of the regularized equation with run metadata.
struct GridRun {
  ViscousParams params;
  double dt_first = 0.0;
  std::vector<GridSnapshot> snapshots;
  std::vector<double> mass_ledger;  // one entry per snapshot
};

/// Smooth nondecreasing switch profile: 1 for s >= epsilon, 0 for
/// s <= -epsilon, cubic smoothstep in between (value 1/2 at s = 0).
double theta_eps(double s, double epsilon);

/// One conservative update: switched local Lax-Friedrichs branch fluxes
/// with explicit diffusion; sub-epsilon switch layers are closed by affine
/// flux interpolation between the flanking resolved faces (the layer's
/// quasi-steady equilibrium).  dt must obey the stability rule, see
/// stable_dt.
GridState viscous_step(const GridState& state, const FluxPair& fp,
                       const ViscousParams& p);

/// dt = cfl * min(dx / Lambda, dx^2/(2 delta)) with Lambda the largest
/// characteristic speed plus the gradient-switch contribution max(g-f)/eps.
double stable_dt(const GridState& state, const FluxPair& fp,
                 const ViscousParams& p);

GridState sample_initial(const Profile& p0, const Domain& d, double dx);

/// Runs the viscous solver from p0 to t_end, recording snapshots and the
/// conservation ledger.
GridRun run_viscous(const Profile& p0, const FluxPair& fp, ViscousParams p,
                    double dx);

/// Piecewise-linear profile through the cell centers (for L1 comparisons).
Profile grid_to_profile(const GridState& s);
/// Piecewise-affine theta field through the face values.
ThetaField grid_theta_field(const GridState& s, const std::vector<double>& theta_faces);

double grid_total_variation(const GridState& s);

}  // namespace gradflux
