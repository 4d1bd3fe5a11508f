#include "gradflux/viscous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gradflux {

double theta_eps(double s, double epsilon) {
  double t = (s / epsilon + 1.0) * 0.5;
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * (3.0 - 2.0 * t);
}

namespace {

// Half-width of the averaging window for the switch gradient.
constexpr std::size_t kSwW = 4;
constexpr std::size_t kPad = kSwW;  // ghost cells per side

struct Scratch {
  std::vector<double> up;   // padded values, kPad ghost cells each side
  std::vector<double> fv, gv, dfa, dga, sgrad;
  std::vector<double> flux, theta;  // per face, size n+1
  std::vector<char> flat;
};

void fill_padded(const GridState& s, std::vector<double>& up) {
  const std::size_t n = s.u.size();
  up.resize(n + 2 * kPad);
  std::copy(s.u.begin(), s.u.end(), up.begin() + kPad);
  if (s.domain.periodic_kind()) {
    for (std::size_t k = 0; k < kPad; ++k) {
      up[k] = s.u[(n - kPad + k) % n];
      up[n + kPad + k] = s.u[k % n];
    }
  } else {
    for (std::size_t k = 0; k < kPad; ++k) {
      up[k] = s.u[0];
      up[n + kPad + k] = s.u[n - 1];
    }
  }
}

// Switch gradient at each face: difference of kSwW-cell means across the
// face.  A face difference must not select its own branch, or grid-scale
// flip-flop decouples the switch from the resolved gradient.
void fill_switch_gradients(const std::vector<double>& up, std::size_t n,
                           double dx, std::vector<double>& sgrad) {
  sgrad.resize(n + 1);
  const double norm = 1.0 / (double(kSwW) * double(kSwW) * dx);
  for (std::size_t j = 0; j <= n; ++j) {
    // face j sits between padded cells (j+kPad-1) and (j+kPad)
    double left = 0.0, right = 0.0;
    for (std::size_t k = 0; k < kSwW; ++k) {
      left += up[j + kPad - 1 - k];
      right += up[j + kPad + k];
    }
    sgrad[j] = (right - left) * norm;
  }
}

// Face fluxes and face thetas.  Faces whose switch gradient resolves the
// smoothing width take the branch flux selected by theta_eps; maximal runs
// of sub-epsilon faces (the switch layer around extrema and genuinely flat
// stretches) are closed quasi-steadily: flux and theta vary affinely
// between the flanking resolved faces.  An explicit pointwise theta(u_x)
// there would need dt ~ eps dx^2/(g-f) to stay below its own overshoot;
// the affine closure is the layer's equilibrium (uniform drain (f-g)/w,
// affine switch ramp) and has no gradient feedback at all.
void compute_faces(const std::vector<double>& up, std::size_t n, double dx,
                   const FluxPair& fp, const ViscousParams& p, Scratch& sc,
                   bool periodic, double q_zone = 0.0) {
  sc.fv.resize(n + 2 * kPad);
  sc.gv.resize(n + 2 * kPad);
  sc.dfa.resize(n + 2 * kPad);
  sc.dga.resize(n + 2 * kPad);
  sc.flux.resize(n + 1);
  sc.theta.resize(n + 1);
  const double* u = up.data();
  for (std::size_t j = 0; j < n + 2 * kPad; ++j) {
    sc.fv[j] = fp.f(u[j]);
    sc.gv[j] = fp.g(u[j]);
    sc.dfa[j] = std::abs(fp.f.d1(u[j]));
    sc.dga[j] = std::abs(fp.g.d1(u[j]));
  }
  fill_switch_gradients(up, n, dx, sc.sgrad);
  std::vector<char>& flat = sc.flat;
  flat.assign(n + 1, 0);
  // a face is resolved only when its switch gradient is sign-coherent
  // across the neighbouring faces; decorrelated roughness is part of the
  // switch layer no matter how steep it samples
  auto coherent = [&](std::size_t j) {
    double m = sc.sgrad[j];
    for (int k = -2; k <= 2; ++k) {
      long idx = long(j) + k;
      if (periodic) {
        idx = (idx % long(n) + long(n)) % long(n);
      } else {
        if (idx < 0) idx = 0;
        if (idx > long(n)) idx = long(n);
      }
      double v = sc.sgrad[std::size_t(idx)];
      if (m > 0.0 && v < m) m = std::max(v, 0.0);
      if (m < 0.0 && v > m) m = std::min(v, 0.0);
      if (m == 0.0) return 0.0;
    }
    return m;
  };
  for (std::size_t j = 0; j <= n; ++j) {
    std::size_t L = j + kPad - 1, R = j + kPad;
    double du = u[R] - u[L];
    double th = theta_eps(sc.sgrad[j], p.epsilon);
    double af = std::max(sc.dfa[L], sc.dfa[R]);
    double ag = std::max(sc.dga[L], sc.dga[R]);
    double fhat = 0.5 * (sc.fv[L] + sc.fv[R]) - 0.5 * af * du;
    double ghat = 0.5 * (sc.gv[L] + sc.gv[R]) - 0.5 * ag * du;
    sc.flux[j] = th * fhat + (1.0 - th) * ghat;
    sc.theta[j] = th;
    flat[j] = std::abs(coherent(j)) < p.epsilon;
  }

  // resolve flat runs
  const std::size_t nf_cycle = n;  // periodic faces 0..n-1 (face n mirrors 0)
  auto blend = [&](std::size_t j) {
    std::size_t L = j + kPad - 1, R = j + kPad;
    double du = u[R] - u[L];
    double diss = 0.5 * std::max(std::max(sc.dfa[L], sc.dfa[R]),
                                 std::max(sc.dga[L], sc.dga[R])) * du;
    return 0.5 * (0.5 * (sc.fv[L] + sc.fv[R]) + 0.5 * (sc.gv[L] + sc.gv[R])) - diss;
  };
  auto zone_dissipate = [&](std::size_t j) {
    // grid-scale roughness inside a flat zone is below the switch
    // resolution; damp it with an amplitude-independent viscosity (the
    // branch dissipation scales with |f'|, which vanishes near u = 0)
    std::size_t L = j + kPad - 1, R = j + kPad;
    sc.flux[j] -= 0.5 * q_zone * (u[R] - u[L]);
  };
  if (periodic) {
    std::size_t first_clean = nf_cycle;
    for (std::size_t j = 0; j < nf_cycle; ++j)
      if (!flat[j]) {
        first_clean = j;
        break;
      }
    if (first_clean == nf_cycle) {
      for (std::size_t j = 0; j <= n; ++j) {
        sc.flux[j] = blend(j);
        sc.theta[j] = 0.5;
        zone_dissipate(j);
      }
      return;
    }
    std::size_t j = first_clean;
    do {
      std::size_t nxt = (j + 1) % nf_cycle;
      if (flat[nxt]) {
        // run of flat faces from nxt to the face before the next clean one
        std::size_t end = nxt, m = 1;
        while (flat[(end + 1) % nf_cycle]) {
          end = (end + 1) % nf_cycle;
          ++m;
        }
        std::size_t rgt = (end + 1) % nf_cycle;
        double Fl = sc.flux[j], Fr = sc.flux[rgt];
        double Tl = sc.theta[j], Tr = sc.theta[rgt];
        for (std::size_t k = 0; k < m; ++k) {
          double w = double(k + 1) / double(m + 1);
          std::size_t idx = (nxt + k) % nf_cycle;
          sc.flux[idx] = (1.0 - w) * Fl + w * Fr;
          sc.theta[idx] = (1.0 - w) * Tl + w * Tr;
          zone_dissipate(idx);
        }
        j = rgt;
      } else {
        j = nxt;
      }
    } while (j != first_clean);
    sc.flux[n] = sc.flux[0];
    sc.theta[n] = sc.theta[0];
    return;
  }
  // bounded: walk faces 0..n; runs touching a wall take the inner flank's
  // flux uniformly (the constant extension continues the flat zone, which
  // therefore carries no divergence)
  std::size_t j = 0;
  while (j <= n) {
    if (!flat[j]) {
      ++j;
      continue;
    }
    std::size_t end = j;
    while (end + 1 <= n && flat[end + 1]) ++end;
    bool has_l = (j > 0), has_r = (end < n);
    if (!has_l && !has_r) {
      for (std::size_t k = j; k <= end; ++k) {
        sc.flux[k] = blend(k);
        sc.theta[k] = 0.5;
        zone_dissipate(k);
      }
    } else if (!has_l) {
      for (std::size_t k = j; k <= end; ++k) {
        sc.flux[k] = sc.flux[end + 1];
        sc.theta[k] = sc.theta[end + 1];
        zone_dissipate(k);
      }
    } else if (!has_r) {
      for (std::size_t k = j; k <= end; ++k) {
        sc.flux[k] = sc.flux[j - 1];
        sc.theta[k] = sc.theta[j - 1];
        zone_dissipate(k);
      }
    } else {
      double Fl = sc.flux[j - 1], Fr = sc.flux[end + 1];
      double Tl = sc.theta[j - 1], Tr = sc.theta[end + 1];
      std::size_t m = end - j + 1;
      for (std::size_t k = 0; k < m; ++k) {
        double w = double(k + 1) / double(m + 1);
        sc.flux[j + k] = (1.0 - w) * Fl + w * Fr;
        sc.theta[j + k] = (1.0 - w) * Tl + w * Tr;
        zone_dissipate(j + k);
      }
    }
    j = end + 1;
  }
}

// One conservative update into `out` (size n).
void step_into(const GridState& s, const FluxPair& fp, const ViscousParams& p,
               double dt, Scratch& sc, std::vector<double>& out) {
  const std::size_t n = s.u.size();
  const double dx = s.dx;
  fill_padded(s, sc.up);
  compute_faces(sc.up, n, dx, fp, p, sc, s.domain.periodic_kind(),
                0.5 * dx / dt);
  const double* up = sc.up.data();
  const double inv_dx = 1.0 / dx;
  out.resize(n);
  const double lam = dt * inv_dx;
  const double dcoef = p.delta * dt * inv_dx * inv_dx;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t c = j + kPad;
    out[j] = up[c] - lam * (sc.flux[j + 1] - sc.flux[j]) +
             dcoef * (up[c + 1] - 2.0 * up[c] + up[c - 1]);
  }
  if (p.u_ref > 0.0) {
    double m = 0.0;
    for (double v : out) m = std::max(m, std::abs(v));
    if (m > 10.0 * p.u_ref)
      throw BlowUp("viscous solution exceeded 10x the initial range");
  }
}

double kahan_mass(const std::vector<double>& u, double dx) {
  long double s = 0.0L;
  for (double v : u) s += v;
  return double(s * (long double)dx);
}

}  // namespace

double stable_dt(const GridState& state, const FluxPair& fp,
                 const ViscousParams& p) {
  double lam_conv = 0.0, gap_max = 0.0;
  for (double u : state.u) {
    lam_conv = std::max({lam_conv, std::abs(fp.f.d1(u)), std::abs(fp.g.d1(u))});
    gap_max = std::max(gap_max, fp.g(u) - fp.f(u));
  }
  double lambda = lam_conv + gap_max / p.epsilon;
  double dt_hyp = (lambda > 0.0) ? state.dx / lambda
                                 : std::numeric_limits<double>::infinity();
  double dt_par = (p.delta > 0.0)
                      ? state.dx * state.dx / (2.0 * p.delta)
                      : std::numeric_limits<double>::infinity();
  return p.cfl * std::min(dt_hyp, dt_par);
}

GridState viscous_step(const GridState& state, const FluxPair& fp,
                       const ViscousParams& p) {
  GridState next = state;
  Scratch sc;
  double dt = stable_dt(state, fp, p);
  step_into(state, fp, p, dt, sc, next.u);
  next.t = state.t + dt;
  return next;
}

GridState sample_initial(const Profile& p0, const Domain& d, double dx) {
  GridState s;
  s.domain = d;
  s.dx = dx;
  s.t = 0.0;
  std::size_t n = std::size_t(std::llround(d.length() / dx));
  if (n < 8) throw ValidationError("dx", "grid needs at least 8 cells");
  s.u.resize(n);
  double x0 = d.periodic_kind() ? 0.0 : d.x_min;
  for (std::size_t j = 0; j < n; ++j) {
    double a = x0 + dx * double(j);
    s.u[j] = p0.integral(a, a + dx) / dx;  // cell average
  }
  return s;
}

GridRun run_viscous(const Profile& p0, const FluxPair& fp, ViscousParams p,
                    double dx) {
  GridState s = sample_initial(p0, p0.domain(), dx);
  if (p.u_ref <= 0.0) {
    for (double v : s.u) p.u_ref = std::max(p.u_ref, std::abs(v));
    p.u_ref = std::max(p.u_ref, 1e-6);
  }

  std::vector<double> times = p.snapshot_times;
  times.push_back(0.0);
  times.push_back(p.t_end);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  if (times.front() < 0.0 || times.back() > p.t_end)
    throw ValidationError("snapshots", "snapshot times outside [0, t_end]");
  p.snapshot_times = times;

  GridRun run;
  run.params = p;

  Scratch sc;
  std::vector<double> next;
  auto take_snapshot = [&](const GridState& st) {
    GridSnapshot snap;
    snap.state = st;
    const std::size_t n = st.u.size();
    fill_padded(st, sc.up);
    compute_faces(sc.up, n, st.dx, fp, p, sc, st.domain.periodic_kind());
    std::size_t nf = st.domain.periodic_kind() ? n : n - 1;
    snap.theta_faces.resize(nf);
    if (st.domain.periodic_kind()) {
      // face k sits between cells k-1 and k; face 0 is the wrap face
      for (std::size_t k = 0; k < nf; ++k)
        snap.theta_faces[k] = sc.theta[k];
    } else {
      for (std::size_t k = 0; k < nf; ++k)
        snap.theta_faces[k] = sc.theta[k + 1];
    }
    snap.mass = kahan_mass(st.u, st.dx);
    run.mass_ledger.push_back(snap.mass);
    run.snapshots.push_back(std::move(snap));
  };

  std::size_t next_snap = 0;
  if (times[next_snap] == 0.0) {
    take_snapshot(s);
    ++next_snap;
  }
  bool first = true;
  while (next_snap < times.size()) {
    double target = times[next_snap];
    while (s.t < target) {
      double dt = stable_dt(s, fp, p);
      if (first) {
        run.dt_first = dt;
        first = false;
      }
      bool hits = (s.t + dt >= target);
      if (hits) dt = target - s.t;
      step_into(s, fp, p, dt, sc, next);
      s.u.swap(next);
      s.t = hits ? target : s.t + dt;
    }
    take_snapshot(s);
    ++next_snap;
  }
  return run;
}

Profile grid_to_profile(const GridState& s) {
  const std::size_t n = s.u.size();
  std::vector<ProfileNode> nodes;
  nodes.reserve(n);
  double x0 = s.domain.periodic_kind() ? 0.0 : s.domain.x_min;
  for (std::size_t j = 0; j < n; ++j) {
    double x = x0 + s.dx * (double(j) + 0.5);
    nodes.push_back({x, s.u[j], s.u[j]});
  }
  return Profile(s.domain, std::move(nodes));
}

ThetaField grid_theta_field(const GridState& s,
                            const std::vector<double>& theta_faces) {
  ThetaField tf;
  tf.domain = s.domain;
  const std::size_t nf = theta_faces.size();
  if (nf == 0) {
    double lo = s.domain.periodic_kind() ? 0.0 : s.domain.x_min;
    double hi = s.domain.periodic_kind() ? s.domain.length() : s.domain.x_max;
    tf.pieces.push_back({lo, hi, 0.5, 0.5});
    return tf;
  }
  if (s.domain.periodic_kind()) {
    // face k at x = k dx, k = 0..n-1 (face 0 = wrap face)
    for (std::size_t k = 0; k < nf; ++k) {
      double xa = s.dx * double(k);
      double xb = s.dx * double(k + 1);
      double va = theta_faces[k];
      double vb = theta_faces[(k + 1) % nf];
      tf.pieces.push_back({xa, std::min(xb, s.domain.length()), va, vb});
    }
  } else {
    double first_x = s.domain.x_min + s.dx;
    tf.pieces.push_back({s.domain.x_min, first_x, theta_faces[0], theta_faces[0]});
    for (std::size_t k = 0; k + 1 < nf; ++k) {
      double xa = s.domain.x_min + s.dx * double(k + 1);
      double xb = s.domain.x_min + s.dx * double(k + 2);
      tf.pieces.push_back({xa, xb, theta_faces[k], theta_faces[k + 1]});
    }
    double last_x = s.domain.x_min + s.dx * double(nf);
    tf.pieces.push_back({last_x, s.domain.x_max, theta_faces[nf - 1], theta_faces[nf - 1]});
  }
  return tf;
}

double grid_total_variation(const GridState& s) {
  long double tv = 0.0L;
  const std::size_t n = s.u.size();
  for (std::size_t j = 0; j + 1 < n; ++j) tv += std::abs(s.u[j + 1] - s.u[j]);
  if (s.domain.periodic_kind()) tv += std::abs(s.u[0] - s.u[n - 1]);
  return double(tv);
}

}  // namespace gradflux
