#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gradflux/errors.hpp"

namespace gradflux {

/// Spatial domain: one period [0, L) with wrap-around, or a bounded
/// interval with constant extension beyond the endpoints.
struct Domain {
  enum class Kind { Periodic, Bounded };
  Kind kind = Kind::Bounded;
  double x_min = 0.0;  // Periodic: 0
  double x_max = 1.0;  // Periodic: period L

  static Domain periodic(double period) {
    return Domain{Kind::Periodic, 0.0, period};
  }
  static Domain bounded(double lo, double hi) {
    return Domain{Kind::Bounded, lo, hi};
  }
  bool periodic_kind() const { return kind == Kind::Periodic; }
  double length() const { return x_max - x_min; }
  bool same_as(const Domain& o, double tol = 1e-12) const;
};

/// A node of a piecewise-linear BV profile.  u_left != u_right encodes a
/// jump at x; segments between consecutive nodes are affine.
struct ProfileNode {
  double x;
  double u_left;
  double u_right;
};

/// The spatial state u(t,.) as an explicit piecewise-linear BV object with
/// explicit jump points.  On periodic domains node abscissae live in
/// [0, L) and the last segment wraps to the first node; on bounded domains
/// the profile extends constantly beyond the first/last node.
class Profile {
 public:
  Profile() = default;
  Profile(Domain d, std::vector<ProfileNode> nodes);

  static Profile constant(Domain d, double value);
  /// Continuous piecewise-linear interpolant of fn sampled at n points.
  static Profile sample(Domain d, const std::function<double(double)>& fn,
                        int n);
  /// Two-state Riemann datum with the jump at x_jump.
  static Profile step(Domain d, double u_left, double u_right, double x_jump);

  const Domain& domain() const { return domain_; }
  const std::vector<ProfileNode>& nodes() const { return nodes_; }

  /// One-sided values; equal except at jump nodes.
  double eval_left(double x) const;
  double eval_right(double x) const;
  double operator()(double x) const { return eval_right(x); }

  /// Exact integral of the profile over [a, b] (within the domain).
  double integral(double a, double b) const;
  /// Integral over the whole domain (one period, or [x_min, x_max]).
  double mass() const;

  double min_value() const;
  double max_value() const;

 private:
  friend double l1_distance(const Profile&, const Profile&);
  Domain domain_;
  std::vector<ProfileNode> nodes_;
};

/// Total variation: sum of |jump| plus the variation of the affine pieces
/// (with the wrap segment on periodic domains).
double total_variation(const Profile& p);

/// Exact L1 distance over one period / the bounded domain, computed
/// piecewise-analytically on the merged breakpoint set.
double l1_distance(const Profile& p, const Profile& q);

/// One affine piece of a theta field on [x0, x1].
struct ThetaPiece {
  double x0, x1;
  double v0, v1;
};

/// The switch field theta(t,.) in [0,1], piecewise affine, possibly with
/// isolated point values at jump points of the paired profile (a value
/// attached to a single x that differs from both one-sided limits).
struct ThetaField {
  Domain domain;
  std::vector<ThetaPiece> pieces;  // contiguous cover of the domain
  struct Atom {
    double x;
    double value;
  };
  std::vector<Atom> atoms;

  /// One-sided limit from the right (pieces only; atoms are not limits).
  double eval(double x) const;
};

/// Declared extremum plateau: an interval on which the profile is constant
/// and attains a local extremum.
struct PlateauSpec {
  double a, b;
};

/// Reconstructs theta from the profile: 1 on strict-increase regions, 0 on
/// strict decrease, affine across each declared plateau, flank-inherited on
/// other constant stretches.  Throws InconsistentPlateau if a declared
/// plateau is not constant in p, AmbiguousTheta if an undeclared constant
/// stretch has conflicting flanks.
ThetaField reconstruct_theta(const Profile& p,
                             const std::vector<PlateauSpec>& plateaus);

/// Maximum oscillation (max - min, atoms included) of theta over any
/// x-window of width <= scale.  Near 1 flags a switch-continuity violation;
/// << 1 certifies continuity at that resolution.
double theta_discontinuity(const ThetaField& t, double scale);

}  // namespace gradflux
