#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gradflux/errors.hpp"

namespace gradflux {

/// A scalar flux law u -> h(u), evaluable together with its first two
/// derivatives.  Polynomial fluxes (the common case, including the
/// builtin Burgers variants) are stored as coefficient lists and
/// evaluated by Horner's rule; arbitrary smooth fluxes can be wrapped
/// through callables for testing.
class Flux {
 public:
  Flux() = default;

  static Flux poly(std::vector<double> coefficients, std::string spec = "");
  static Flux custom(std::function<double(double)> value,
                     std::function<double(double)> deriv1,
                     std::function<double(double)> deriv2,
                     std::string spec = "custom");

  double operator()(double u) const {
    if (!coef_.empty()) return horner(coef_, u);
    return fn_(u);
  }
  double d1(double u) const {
    if (!coef_.empty()) return horner(dcoef_, u);
    return dfn_(u);
  }
  double d2(double u) const {
    if (!coef_.empty()) return horner(ddcoef_, u);
    return ddfn_(u);
  }

  const std::string& spec() const { return spec_; }
  bool is_poly() const { return !coef_.empty(); }
  const std::vector<double>& coefficients() const { return coef_; }

 private:
  static double horner(const std::vector<double>& c, double u) {
    double r = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * u + c[i];
    return r;
  }

  std::vector<double> coef_, dcoef_, ddcoef_;  // c0 + c1 u + c2 u^2 + ...
  std::function<double(double)> fn_, dfn_, ddfn_;
  std::string spec_;
};

/// Parses the flux spec grammar: `burgers`, `burgers_plus_1`, or
/// `poly:c0,c1,c2,...` meaning c0 + c1*u + c2*u^2 + ...
Flux parse_flux_spec(const std::string& spec);

/// The two flux laws of the gradient-switched conservation law, with the
/// verified gap constant c0 = min(g - f) over the validated state range.
struct FluxPair {
  Flux f, g;
  double u_lo = -1.0;
  double u_hi = 1.0;
  double c0 = 0.0;

  double gap(double u) const { return g(u) - f(u); }
};

/// Builds a FluxPair and validates the stable-case gap g - f >= c0 > 0 by
/// dense sampling of [u_lo, u_hi].  Throws GapViolation if the sampled
/// minimum is not strictly positive.
FluxPair make_flux_pair(const Flux& f, const Flux& g, double u_lo, double u_hi,
                        int n_samples = 1000);
FluxPair make_flux_pair(const std::string& f_spec, const std::string& g_spec,
                        double u_lo, double u_hi, int n_samples = 1000);

enum class EnvelopeKind { LowerConvex, UpperConcave };

/// Convex/concave envelope of a flux over a state interval.  Breakpoints
/// partition [min(u_a,u_b), max(u_a,u_b)]; each segment either follows the
/// flux itself (contact set, rarefaction part) or is a straight chord
/// (shock part).
struct Envelope {
  EnvelopeKind kind = EnvelopeKind::LowerConvex;
  double u_a = 0.0, u_b = 0.0;  // source interval, as given by the caller
  std::vector<std::pair<double, double>> breakpoints;  // increasing (u, value)
  std::vector<bool> segment_on_flux;  // size breakpoints.size()-1
  Flux flux;

  double value(double u) const;
  double segment_slope(std::size_t i) const;
};

/// Constructs the lower-convex or upper-concave envelope of `flux` on the
/// closed interval between u_a and u_b, accurate to `tol` in sup-norm.
Envelope flux_envelope(const Flux& flux, double u_a, double u_b,
                       EnvelopeKind kind, double tol = 1e-10);

}  // namespace gradflux
