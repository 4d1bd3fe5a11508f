#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "gradflux/flux.hpp"
#include "gradflux/profile.hpp"
#include "gradflux/riemann.hpp"

namespace gradflux {

enum class Orientation { Max, Min };

/// Level drift of an extremum plateau of width b-a: the flux imbalance
/// f(level)-g(level) spread over the interval (negative for maxima, the
/// mirrored positive rate for minima).
double plateau_rate(const FluxPair& fp, double level, double a, double b,
                    Orientation o);

/// A moving jump.  Kinematics are anchored: pos(t) = x0 + speed*(t-anchor),
/// with the state-wide anchor time held by the owning FrontState.
struct Front {
  double x0 = 0.0;
  double speed = 0.0;
  WaveKind kind = WaveKind::Shock;
};

/// A constant piece between fronts.  Extremum segments (plateaus) carry the
/// ODE-driven level: value(t) = v0 + rate*(t-anchor).
struct Segment {
  double v0 = 0.0;
  double rate = 0.0;
  int extremum = 0;  // +1 max plateau, -1 min plateau, 0 plain
};

struct FTEvent {
  enum class Kind { Collision, Absorption, Merge, Boundary };
  double t;
  Kind kind;
  double x;
  double tv_before;
  double tv_after;
};

/// Event-driven representation of the semigroup solution: ordered fronts
/// and the constant segments between them.  Between events every front
/// moves at its Rankine-Hugoniot speed and every plateau level integrates
/// plateau_rate; anchors are only rewritten at events and at the Euler
/// resync times, so advancing to t1 and then t2 reproduces a direct
/// advance to t2 bit for bit.
struct FrontState {
  Domain domain;
  double quantum = 0.02;  // value-grid h
  double time = 0.0;
  double anchor = 0.0;
  double next_resync = std::numeric_limits<double>::infinity();
  // single-branch embeddings run with plateau tracking off: extrema are
  // never registered and no level dynamics happens
  bool plateaus_enabled = true;
  std::vector<Front> fronts;
  std::vector<Segment> segments;  // fronts.size()+1 (bounded) or fronts.size() (periodic)

  bool periodic() const { return domain.periodic_kind(); }
  int n_fronts() const { return int(fronts.size()); }
  int n_segments() const { return int(segments.size()); }

  // Periodic: segment j spans [front_j, front_{j+1 mod m}] (wrapping);
  // bounded: segment j spans [front_{j-1}, front_j] with the edge segments
  // extending to the domain boundary.  front i separates left_seg(i) from
  // right_seg(i).
  int left_seg(int i) const {
    return periodic() ? (i + n_segments() - 1) % n_segments() : i;
  }
  int right_seg(int i) const { return periodic() ? i : i + 1; }
  // Bounding fronts of segment j; -1 at a bounded-domain edge.
  int left_front(int j) const {
    if (periodic()) return j;
    return j - 1;
  }
  int right_front(int j) const {
    if (periodic()) return (j + 1) % n_fronts();
    return j < n_fronts() ? j : -1;
  }

  double front_pos(int i, double t) const {
    return fronts[std::size_t(i)].x0 + fronts[std::size_t(i)].speed * (t - anchor);
  }
  double seg_value(int j, double t) const {
    return segments[std::size_t(j)].v0 + segments[std::size_t(j)].rate * (t - anchor);
  }
  double front_u_left(int i, double t) const {
    return seg_value(left_seg(i), t);
  }
  double front_u_right(int i, double t) const {
    return seg_value(right_seg(i), t);
  }
  /// Width of segment j at time t (wrap-aware, clipped at bounded edges).
  double seg_width(int j, double t) const;
  int plateau_count() const;
};

/// Builds a FrontState directly from piecewise-constant data: values[i] on
/// the piece left of positions[i] boundary... positions.size() ==
/// values.size()-1 (bounded) or values.size() (periodic, positions[i] is the
/// left edge of piece i).  No Riemann re-solving; used by tests and by
/// init_fronts.
FrontState make_front_state(const Domain& d, const std::vector<double>& positions,
                            const std::vector<double>& values,
                            const FluxPair& fp, double h,
                            bool detect_plateaus = true);

/// Quantizes p0 to the value grid h*Z (continuous ramps; pre-existing flat
/// pieces keep their exact values), re-solves every jump as an entropy fan,
/// and registers each positive-width local extremum as a plateau.
FrontState init_fronts(const Profile& p0, const FluxPair& fp, double h);

/// Same construction without extremum registration: every jump evolves
/// under the branch fixed by its sign and no plateau dynamics runs.  This
/// embeds single-flux entropy solutions (the admissible non-semigroup
/// weak solutions) in the same machinery.
FrontState init_fronts_single_branch(const Profile& p0, const FluxPair& fp,
                                     double h);

/// Advances the state in place to t_target, processing collision,
/// absorption, merge and boundary events; appends them to `events` if given.
void advance_to(FrontState& s, const FluxPair& fp, double t_target,
                std::vector<FTEvent>* events = nullptr);

/// Functional form: advance by at most dt_max.
std::pair<FrontState, std::vector<FTEvent>> advance(const FrontState& s,
                                                    const FluxPair& fp,
                                                    double dt_max);

/// Piecewise-constant profile with jumps exactly at the front positions.
Profile snapshot_to_profile(const FrontState& s);
/// Current plateau intervals (positions at s.time).
std::vector<PlateauSpec> plateau_intervals(const FrontState& s);
std::vector<Orientation> plateau_orientations(const FrontState& s);
/// Theta via reconstruct_theta with the registered plateaus.
ThetaField snapshot_theta(const FrontState& s);

double front_state_tv(const FrontState& s);
double front_state_mass(const FrontState& s);

/// Rewrites all anchors at time t and refreshes speeds and rates from the
/// instantaneous states.  Meant for snapshot copies; rewriting the live
/// state of a run would change its resync schedule.
void reanchor_snapshot(FrontState& s, const FluxPair& fp, double t);

struct SemigroupSnapshot {
  double t;
  Profile u;
  ThetaField theta;
  FrontState state;  // re-anchored copy at t
  double mass;
  double tv;
};

struct SemigroupRun {
  double quantum = 0.0;
  std::vector<SemigroupSnapshot> snapshots;
  std::vector<FTEvent> events;
};

/// Front-tracking semigroup trajectory with snapshots at the given times
/// (t=0 and t_end are always included).
SemigroupRun run_semigroup(const Profile& p0, const FluxPair& fp, double h,
                           double t_end, std::vector<double> snapshot_times);

}  // namespace gradflux
