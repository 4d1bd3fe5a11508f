#include "gradflux/flux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gradflux {

namespace {

std::vector<double> differentiate(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * double(i));
  if (d.empty()) d.push_back(0.0);
  return d;
}

}  // namespace

Flux Flux::poly(std::vector<double> coefficients, std::string spec) {
  if (coefficients.empty()) coefficients.push_back(0.0);
  Flux fx;
  fx.coef_ = std::move(coefficients);
  fx.dcoef_ = differentiate(fx.coef_);
  fx.ddcoef_ = differentiate(fx.dcoef_);
  if (spec.empty()) {
    std::ostringstream os;
    os << "poly:";
    for (std::size_t i = 0; i < fx.coef_.size(); ++i) {
      if (i) os << ',';
      os << fx.coef_[i];
    }
    spec = os.str();
  }
  fx.spec_ = std::move(spec);
  return fx;
}

Flux Flux::custom(std::function<double(double)> value,
                  std::function<double(double)> deriv1,
                  std::function<double(double)> deriv2, std::string spec) {
  Flux fx;
  fx.fn_ = std::move(value);
  fx.dfn_ = std::move(deriv1);
  fx.ddfn_ = std::move(deriv2);
  fx.spec_ = std::move(spec);
  return fx;
}

Flux parse_flux_spec(const std::string& spec) {
  if (spec == "burgers") return Flux::poly({0.0, 0.0, 0.5}, "burgers");
  if (spec == "burgers_plus_1")
    return Flux::poly({1.0, 0.0, 0.5}, "burgers_plus_1");
  if (spec.rfind("poly:", 0) == 0) {
    std::vector<double> coef;
    std::string body = spec.substr(5);
    if (body.empty()) throw ParseError("empty coefficient list in '" + spec + "'");
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size()) throw std::invalid_argument(tok);
        coef.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("bad coefficient '" + tok + "' in flux spec '" + spec + "'");
      }
    }
    if (coef.empty()) throw ParseError("empty coefficient list in '" + spec + "'");
    return Flux::poly(std::move(coef), spec);
  }
  throw ParseError("unknown flux spec '" + spec +
                   "' (expected burgers, burgers_plus_1, or poly:c0,c1,...)");
}

FluxPair make_flux_pair(const Flux& f, const Flux& g, double u_lo, double u_hi,
                        int n_samples) {
  if (!(u_lo < u_hi)) throw ValidationError("u_lo", "require u_lo < u_hi");
  if (n_samples < 2) throw ValidationError("n_samples", "require n_samples >= 2");
  double c0 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_samples; ++i) {
    double u = u_lo + (u_hi - u_lo) * double(i) / double(n_samples - 1);
    c0 = std::min(c0, g(u) - f(u));
  }
  if (!(c0 > 0.0))
    throw GapViolation("flux gap min(g-f) = " + std::to_string(c0) +
                       " is not strictly positive on the validated range");
  return FluxPair{f, g, u_lo, u_hi, c0};
}

FluxPair make_flux_pair(const std::string& f_spec, const std::string& g_spec,
                        double u_lo, double u_hi, int n_samples) {
  return make_flux_pair(parse_flux_spec(f_spec), parse_flux_spec(g_spec), u_lo,
                        u_hi, n_samples);
}

double Envelope::value(double u) const {
  const auto& bp = breakpoints;
  if (bp.empty()) return 0.0;
  if (u <= bp.front().first) return bp.front().second;
  if (u >= bp.back().first) return bp.back().second;
  std::size_t i = 1;
  while (i < bp.size() && bp[i].first < u) ++i;
  // segment i-1 spans [bp[i-1], bp[i]]
  if (segment_on_flux[i - 1]) return flux(u);
  double t = (u - bp[i - 1].first) / (bp[i].first - bp[i - 1].first);
  return bp[i - 1].second + t * (bp[i].second - bp[i - 1].second);
}

double Envelope::segment_slope(std::size_t i) const {
  return (breakpoints[i + 1].second - breakpoints[i].second) /
         (breakpoints[i + 1].first - breakpoints[i].first);
}

namespace {

struct HullResult {
  std::vector<std::pair<double, double>> pts;  // breakpoints
  std::vector<bool> on_flux;                   // per segment
};

// Lower convex hull of the sampled graph by the monotone-chain sweep;
// hull edges joining adjacent samples are contact (envelope = flux) and
// longer edges are chords.  The upper-concave case is handled by sign
// flipping in the caller.
HullResult lower_hull(const std::vector<double>& us,
                      const std::vector<double>& vs) {
  const std::size_t n = us.size();
  std::vector<std::size_t> hull;
  hull.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      double cross = (us[b] - us[a]) * (vs[i] - vs[a]) -
                     (vs[b] - vs[a]) * (us[i] - us[a]);
      if (cross <= 0.0)
        hull.pop_back();  // b lies on or above chord a-i: drop it
      else
        break;
    }
    hull.push_back(i);
  }
  // Classify hull edges, merging consecutive contact edges.
  HullResult r;
  r.pts.push_back({us[hull[0]], vs[hull[0]]});
  std::size_t k = 0;
  while (k + 1 < hull.size()) {
    bool contact = (hull[k + 1] == hull[k] + 1);
    std::size_t j = k + 1;
    if (contact) {
      while (j + 1 < hull.size() && hull[j + 1] == hull[j] + 1) ++j;
    }
    r.pts.push_back({us[hull[j]], vs[hull[j]]});
    r.on_flux.push_back(contact);
    k = j;
  }
  return r;
}

// Newton polish of a chord endpoint in flipped (lower-hull) coordinates:
// a tangency u* of a chord anchored at (ua, phi(ua)) satisfies
// phi'(u*) (u* - ua) = phi(u*) - phi(ua).
bool polish_single(const Flux& flux, double sgn, double anchor, double& u,
                   double lo, double hi) {
  double x = u;
  for (int it = 0; it < 60; ++it) {
    double w = x - anchor;
    double f = sgn * flux.d1(x) * w - (sgn * flux(x) - sgn * flux(anchor));
    double df = sgn * flux.d2(x) * w;
    if (df == 0.0) return false;
    double step = f / df;
    x -= step;
    if (!(x > lo && x < hi)) return false;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) {
      u = x;
      return true;
    }
  }
  return false;
}

// Double tangency: both chord endpoints free.
bool polish_double(const Flux& flux, double sgn, double& a, double& b,
                   double lo, double hi) {
  double x = a, y = b;
  for (int it = 0; it < 60; ++it) {
    double w = y - x;
    double fx = sgn * flux.d1(x), fy = sgn * flux.d1(y);
    double vx = sgn * flux(x), vy = sgn * flux(y);
    double F1 = fx * w - (vy - vx);
    double F2 = fy * w - (vy - vx);
    double J11 = sgn * flux.d2(x) * w;
    double J12 = fx - fy;
    double J21 = fx - fy;
    double J22 = sgn * flux.d2(y) * w;
    double det = J11 * J22 - J12 * J21;
    if (det == 0.0) return false;
    double dx = (F1 * J22 - F2 * J12) / det;
    double dy = (J11 * F2 - J21 * F1) / det;
    x -= dx;
    y -= dy;
    if (!(x > lo && y < hi && x < y)) return false;
    if (std::abs(dx) + std::abs(dy) < 1e-15 * std::max(1.0, std::abs(x) + std::abs(y))) {
      a = x;
      b = y;
      return true;
    }
  }
  return false;
}

Envelope build_envelope(const Flux& flux, double lo, double hi,
                        EnvelopeKind kind, std::size_t n) {
  const double sgn = (kind == EnvelopeKind::LowerConvex) ? 1.0 : -1.0;
  std::vector<double> us(n), vs(n);
  for (std::size_t i = 0; i < n; ++i) {
    us[i] = lo + (hi - lo) * double(i) / double(n - 1);
    vs[i] = sgn * flux(us[i]);
  }
  us.back() = hi;  // keep endpoints exact
  HullResult h = lower_hull(us, vs);
  Envelope env;
  env.kind = kind;
  env.flux = flux;
  env.breakpoints = std::move(h.pts);
  env.segment_on_flux = std::move(h.on_flux);
  if (kind == EnvelopeKind::UpperConcave)
    for (auto& p : env.breakpoints) p.second = -p.second;
  // Pin endpoint values to the exact flux.
  env.breakpoints.front().second = flux(env.breakpoints.front().first);
  env.breakpoints.back().second = flux(env.breakpoints.back().first);
  return env;
}

}  // namespace

Envelope flux_envelope(const Flux& flux, double u_a, double u_b,
                       EnvelopeKind kind, double tol) {
  double scale = std::max({1.0, std::abs(u_a), std::abs(u_b)});
  if (std::abs(u_a - u_b) <= 1e-13 * scale)
    throw DegenerateInterval("envelope interval is degenerate");
  const double lo = std::min(u_a, u_b), hi = std::max(u_a, u_b);

  // Sample finely enough that the hull error M dx^2 / 8 stays below tol,
  // then Newton-polish the chord tangency points to machine accuracy.
  double curv = 0.0;
  for (int i = 0; i <= 1024; ++i)
    curv = std::max(curv, std::abs(flux.d2(lo + (hi - lo) * double(i) / 1024.0)));
  double tol_struct = std::max(tol, 1e-10);
  std::size_t n = 129;
  if (curv > 0.0) {
    double dx = std::sqrt(8.0 * tol_struct / curv);
    double need = (hi - lo) / dx;
    n = std::size_t(std::clamp(need, 128.0, 200000.0)) + 1;
  }
  Envelope env = build_envelope(flux, lo, hi, kind, n);

  const double sgn = (kind == EnvelopeKind::LowerConvex) ? 1.0 : -1.0;
  auto& bp = env.breakpoints;
  for (std::size_t i = 0; i < env.segment_on_flux.size(); ++i) {
    if (env.segment_on_flux[i]) continue;
    double a = bp[i].first, b = bp[i + 1].first;
    double lo_gate = (i == 0) ? lo : bp[i - 1].first;
    double hi_gate = (i + 2 < bp.size()) ? bp[i + 2].first : hi;
    bool a_fixed = (bp[i].first == lo);
    bool b_fixed = (bp[i + 1].first == hi);
    double na = a, nb = b;
    bool ok = false;
    if (a_fixed && !b_fixed) {
      ok = polish_single(flux, sgn, a, nb, std::max(lo_gate, a), hi_gate);
    } else if (b_fixed && !a_fixed) {
      ok = polish_single(flux, sgn, b, na, lo_gate, std::min(hi_gate, b));
    } else if (!a_fixed && !b_fixed) {
      ok = polish_double(flux, sgn, na, nb, lo_gate, hi_gate);
    }
    if (ok) {
      bp[i].first = na;
      bp[i].second = flux(na);
      bp[i + 1].first = nb;
      bp[i + 1].second = flux(nb);
    }
  }

  env.u_a = u_a;
  env.u_b = u_b;
  return env;
}

}  // namespace gradflux
