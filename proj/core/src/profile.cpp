#include "gradflux/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gradflux {

bool Domain::same_as(const Domain& o, double tol) const {
  return kind == o.kind && std::abs(x_min - o.x_min) <= tol &&
         std::abs(x_max - o.x_max) <= tol;
}

Profile::Profile(Domain d, std::vector<ProfileNode> nodes)
    : domain_(d), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw ValidationError("nodes", "profile needs at least one node");
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
    if (!(nodes_[i].x < nodes_[i + 1].x))
      throw ValidationError("nodes", "node abscissae must be strictly increasing");
  if (domain_.periodic_kind()) {
    if (nodes_.front().x < 0.0 || nodes_.back().x >= domain_.length())
      throw ValidationError("nodes", "periodic node abscissae must lie in [0, L)");
  } else {
    if (nodes_.front().x < domain_.x_min - 1e-12 ||
        nodes_.back().x > domain_.x_max + 1e-12)
      throw ValidationError("nodes", "node abscissae must lie inside the domain");
  }
}

Profile Profile::constant(Domain d, double value) {
  double x0 = d.periodic_kind() ? 0.0 : d.x_min;
  return Profile(d, {ProfileNode{x0, value, value}});
}

Profile Profile::sample(Domain d, const std::function<double(double)>& fn,
                        int n) {
  if (n < 2) throw ValidationError("n", "need at least 2 sample points");
  std::vector<ProfileNode> nodes;
  nodes.reserve(std::size_t(n) + 1);
  if (d.periodic_kind()) {
    for (int i = 0; i < n; ++i) {
      double x = d.length() * double(i) / double(n);
      double v = fn(x);
      nodes.push_back({x, v, v});
    }
  } else {
    for (int i = 0; i <= n; ++i) {
      double x = d.x_min + d.length() * double(i) / double(n);
      double v = fn(x);
      nodes.push_back({x, v, v});
    }
  }
  return Profile(d, std::move(nodes));
}

Profile Profile::step(Domain d, double u_left, double u_right, double x_jump) {
  return Profile(d, {ProfileNode{x_jump, u_left, u_right}});
}

namespace {

// Index of the last node with node.x <= x, or -1.
int locate(const std::vector<ProfileNode>& nodes, double x) {
  auto it = std::upper_bound(
      nodes.begin(), nodes.end(), x,
      [](double v, const ProfileNode& n) { return v < n.x; });
  return int(it - nodes.begin()) - 1;
}

double wrap_into_period(double x, double L) {
  double r = std::fmod(x, L);
  if (r < 0.0) r += L;
  return r;
}

}  // namespace

double Profile::eval_right(double x) const {
  const auto& nd = nodes_;
  if (domain_.periodic_kind()) {
    double L = domain_.length();
    double xr = wrap_into_period(x, L);
    int i = locate(nd, xr);
    if (i < 0) {  // between last node (wrapped) and first node
      const auto& a = nd.back();
      const auto& b = nd.front();
      double seg = (L - a.x) + b.x;
      if (seg == 0.0) return b.u_left;
      double t = (xr + (L - a.x)) / seg;
      return a.u_right + t * (b.u_left - a.u_right);
    }
    if (nd[std::size_t(i)].x == xr) return nd[std::size_t(i)].u_right;
    const auto& a = nd[std::size_t(i)];
    bool last = (std::size_t(i) + 1 == nd.size());
    double bx = last ? nd.front().x + L : nd[std::size_t(i) + 1].x;
    double bv = last ? nd.front().u_left : nd[std::size_t(i) + 1].u_left;
    if (bx == a.x) return a.u_right;
    double t = (xr - a.x) / (bx - a.x);
    return a.u_right + t * (bv - a.u_right);
  }
  int i = locate(nd, x);
  if (i < 0) return nd.front().u_left;
  if (std::size_t(i) + 1 == nd.size()) return nd.back().u_right;
  const auto& a = nd[std::size_t(i)];
  if (a.x == x) return a.u_right;
  const auto& b = nd[std::size_t(i) + 1];
  double t = (x - a.x) / (b.x - a.x);
  return a.u_right + t * (b.u_left - a.u_right);
}

double Profile::eval_left(double x) const {
  const auto& nd = nodes_;
  if (domain_.periodic_kind()) {
    double L = domain_.length();
    double xr = wrap_into_period(x, L);
    int i = locate(nd, xr);
    if (i >= 0 && nd[std::size_t(i)].x == xr) return nd[std::size_t(i)].u_left;
    return eval_right(x);
  }
  int i = locate(nd, x);
  if (i >= 0 && nd[std::size_t(i)].x == x) return nd[std::size_t(i)].u_left;
  return eval_right(x);
}

double Profile::integral(double a, double b) const {
  if (b <= a) return 0.0;
  // Breakpoints strictly inside (a, b), remembering the canonical node
  // abscissa so one-sided limits are never evaluated through a wrapped
  // coordinate (which could land an ulp past a jump).
  struct Bp {
    double x, canon;
  };
  std::vector<Bp> xs;
  xs.push_back({a, a});
  if (domain_.periodic_kind()) {
    double L = domain_.length();
    double base = std::floor(a / L) * L;
    for (double off = base; off < b + L; off += L) {
      for (const auto& n : nodes_) {
        double x = n.x + off;
        if (x > a && x < b) xs.push_back({x, n.x});
      }
    }
    std::sort(xs.begin(), xs.end(),
              [](const Bp& p, const Bp& q) { return p.x < q.x; });
  } else {
    for (const auto& n : nodes_)
      if (n.x > a && n.x < b) xs.push_back({n.x, n.x});
  }
  xs.push_back({b, b});
  long double sum = 0.0L;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    double v0 = eval_right(xs[i].canon);
    double v1 = eval_left(xs[i + 1].canon);
    sum += (long double)(0.5 * (v0 + v1)) * (long double)(xs[i + 1].x - xs[i].x);
  }
  return double(sum);
}

double Profile::mass() const {
  if (domain_.periodic_kind()) return integral(0.0, domain_.length());
  return integral(domain_.x_min, domain_.x_max);
}

double Profile::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& n : nodes_) m = std::min({m, n.u_left, n.u_right});
  return m;
}

double Profile::max_value() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& n : nodes_) m = std::max({m, n.u_left, n.u_right});
  return m;
}

double total_variation(const Profile& p) {
  const auto& nd = p.nodes();
  long double tv = 0.0L;
  for (const auto& n : nd) tv += std::abs(n.u_right - n.u_left);
  for (std::size_t i = 0; i + 1 < nd.size(); ++i)
    tv += std::abs(nd[i + 1].u_left - nd[i].u_right);
  if (p.domain().periodic_kind())
    tv += std::abs(nd.front().u_left - nd.back().u_right);
  return double(tv);
}

namespace {

// Exact integral of |affine| running from d0 to d1 over an interval of
// length len.
double abs_affine_integral(double d0, double d1, double len) {
  if (len <= 0.0) return 0.0;
  if (d0 * d1 >= 0.0) return 0.5 * (std::abs(d0) + std::abs(d1)) * len;
  double a0 = std::abs(d0), a1 = std::abs(d1);
  double s = len * a0 / (a0 + a1);
  return 0.5 * (a0 * s + a1 * (len - s));
}

}  // namespace

double l1_distance(const Profile& p, const Profile& q) {
  if (!p.domain().same_as(q.domain()))
    throw DomainMismatch("profiles live on different domains");
  const Domain& d = p.domain();
  std::vector<double> xs;
  if (d.periodic_kind()) {
    for (const auto& n : p.nodes()) xs.push_back(n.x);
    for (const auto& n : q.nodes()) xs.push_back(n.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    double L = d.length();
    long double sum = 0.0L;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double a = xs[i];
      bool wrap = (i + 1 == xs.size());
      double b = wrap ? xs.front() : xs[i + 1];  // same circle point as a+L
      double len = (wrap ? xs.front() + L : xs[i + 1]) - a;
      double d0 = p.eval_right(a) - q.eval_right(a);
      double d1 = p.eval_left(b) - q.eval_left(b);
      sum += abs_affine_integral(d0, d1, len);
    }
    return double(sum);
  }
  xs.push_back(d.x_min);
  for (const auto& n : p.nodes()) xs.push_back(n.x);
  for (const auto& n : q.nodes()) xs.push_back(n.x);
  xs.push_back(d.x_max);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  long double sum = 0.0L;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    double d0 = p.eval_right(xs[i]) - q.eval_right(xs[i]);
    double d1 = p.eval_left(xs[i + 1]) - q.eval_left(xs[i + 1]);
    sum += abs_affine_integral(d0, d1, xs[i + 1] - xs[i]);
  }
  return double(sum);
}

double ThetaField::eval(double x) const {
  if (pieces.empty()) return 1.0;
  if (domain.periodic_kind()) {
    x = wrap_into_period(x, domain.length());
    // pieces may cover [a, a+L) with a > 0 when a piece spans the wrap
    if (x < pieces.front().x0) x += domain.length();
  }
  auto it = std::upper_bound(
      pieces.begin(), pieces.end(), x,
      [](double v, const ThetaPiece& pc) { return v < pc.x0; });
  std::size_t i = (it == pieces.begin()) ? 0 : std::size_t(it - pieces.begin()) - 1;
  const ThetaPiece& pc = pieces[i];
  if (x <= pc.x0) return pc.v0;
  if (x >= pc.x1) return pc.v1;
  double t = (x - pc.x0) / (pc.x1 - pc.x0);
  return pc.v0 + t * (pc.v1 - pc.v0);
}

// ---------------------------------------------------------------------------
// reconstruct_theta

namespace {

struct Region {
  double x0, x1;
  int cls;  // +1 increasing, -1 decreasing, 0 constant
};

struct RegionChain {
  std::vector<Region> regions;
  // jump_sign[i]: sign of the jump at the boundary between region i-1 and
  // region i (for periodic, jump_sign[0] sits at the wrap boundary).
  std::vector<int> jump_sign;
};

int slope_class(double du) { return du > 0.0 ? 1 : (du < 0.0 ? -1 : 0); }

RegionChain build_regions(const Profile& p) {
  const auto& nd = p.nodes();
  const Domain& d = p.domain();
  RegionChain ch;
  std::vector<Region> raw;
  std::vector<int> jumps;  // jump at the left end of raw[i]

  auto push = [&](double x0, double x1, int cls, int jump_before) {
    if (x1 < x0) return;
    raw.push_back({x0, x1, cls});
    jumps.push_back(jump_before);
  };

  if (d.periodic_kind()) {
    double L = d.length();
    for (std::size_t i = 0; i < nd.size(); ++i) {
      const auto& a = nd[i];
      bool last = (i + 1 == nd.size());
      double bx = last ? nd.front().x + L : nd[i + 1].x;
      double bv = last ? nd.front().u_left : nd[i + 1].u_left;
      int jb = slope_class(a.u_right - a.u_left);
      push(a.x, bx, slope_class(bv - a.u_right), jb);
    }
  } else {
    int pending_jump = 0;
    if (nd.front().x > d.x_min)
      push(d.x_min, nd.front().x, 0, 0);
    for (std::size_t i = 0; i < nd.size(); ++i) {
      const auto& a = nd[i];
      int jb = slope_class(a.u_right - a.u_left);
      if (i + 1 < nd.size()) {
        push(a.x, nd[i + 1].x, slope_class(nd[i + 1].u_left - a.u_right), jb);
      } else {
        pending_jump = jb;
        if (a.x < d.x_max) push(a.x, d.x_max, 0, jb), pending_jump = 0;
      }
    }
    if (raw.empty()) push(d.x_min, d.x_max, 0, 0);
    (void)pending_jump;  // a jump exactly at x_max carries no interior region
  }

  // Merge same-class neighbours not separated by a jump.
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!ch.regions.empty() && jumps[i] == 0 &&
        ch.regions.back().cls == raw[i].cls) {
      ch.regions.back().x1 = raw[i].x1;
    } else {
      ch.regions.push_back(raw[i]);
      ch.jump_sign.push_back(jumps[i]);
    }
  }
  if (d.periodic_kind() && ch.regions.size() > 1 && ch.jump_sign.front() == 0 &&
      ch.regions.front().cls == ch.regions.back().cls) {
    // merge across the wrap
    ch.regions.back().x1 = ch.regions.front().x1 + d.length();
    ch.regions.erase(ch.regions.begin());
    ch.jump_sign.erase(ch.jump_sign.begin());
  }
  return ch;
}

// Theta value demanded by a flank feature, or -1 when the flank gives no
// information (domain edge).
double flank_value(const RegionChain& ch, std::size_t i, bool left_side,
                   bool periodic) {
  const std::size_t n = ch.regions.size();
  if (left_side) {
    int js = ch.jump_sign[i];
    if (js != 0) return js > 0 ? 1.0 : 0.0;
    if (i == 0 && !periodic) return -1.0;
    const Region& nb = ch.regions[(i + n - 1) % n];
    if (nb.cls != 0) return nb.cls > 0 ? 1.0 : 0.0;
    return -1.0;  // const next to const across no jump: cannot happen after merge
  }
  std::size_t j = (i + 1) % n;
  if (i + 1 == n && !periodic) return -1.0;
  int js = ch.jump_sign[j];
  if (js != 0) return js > 0 ? 1.0 : 0.0;
  const Region& nb = ch.regions[j];
  if (nb.cls != 0) return nb.cls > 0 ? 1.0 : 0.0;
  return -1.0;
}

}  // namespace

ThetaField reconstruct_theta(const Profile& p,
                             const std::vector<PlateauSpec>& plateaus) {
  const Domain& d = p.domain();
  RegionChain ch = build_regions(p);
  const bool periodic = d.periodic_kind();

  // Assign each declared plateau to the constant region containing it.
  std::vector<int> plateau_of(ch.regions.size(), -1);
  for (std::size_t k = 0; k < plateaus.size(); ++k) {
    const auto& pl = plateaus[k];
    if (!(pl.b > pl.a))
      throw InconsistentPlateau("plateau interval has nonpositive width");
    bool found = false;
    for (std::size_t i = 0; i < ch.regions.size(); ++i) {
      const Region& r = ch.regions[i];
      if (r.cls != 0) continue;
      double a = pl.a, b = pl.b;
      if (periodic) {
        // allow the declared interval to be expressed modulo the period
        double L = d.length();
        while (a < r.x0 - 1e-12) a += L, b += L;
      }
      if (a >= r.x0 - 1e-9 && b <= r.x1 + 1e-9) {
        if (plateau_of[i] >= 0)
          throw InconsistentPlateau("two plateaus declared on one constant stretch");
        plateau_of[i] = int(k);
        found = true;
        break;
      }
    }
    if (!found)
      throw InconsistentPlateau("declared plateau is not a constant stretch of the profile");
  }

  ThetaField tf;
  tf.domain = d;
  auto emit = [&tf](double x0, double x1, double v0, double v1) {
    if (x1 <= x0) return;
    if (!tf.pieces.empty() && v0 == v1) {
      ThetaPiece& back = tf.pieces.back();
      if (back.v0 == back.v1 && back.v1 == v0) {
        back.x1 = x1;  // extend constant run
        return;
      }
    }
    tf.pieces.push_back({x0, x1, v0, v1});
  };

  for (std::size_t i = 0; i < ch.regions.size(); ++i) {
    const Region& r = ch.regions[i];
    if (r.cls > 0) {
      emit(r.x0, r.x1, 1.0, 1.0);
      continue;
    }
    if (r.cls < 0) {
      emit(r.x0, r.x1, 0.0, 0.0);
      continue;
    }
    double lv = flank_value(ch, i, true, periodic);
    double rv = flank_value(ch, i, false, periodic);
    if (plateau_of[i] >= 0) {
      const auto& pl = plateaus[std::size_t(plateau_of[i])];
      double a = pl.a, b = pl.b;
      if (periodic) {
        double L = d.length();
        while (a < r.x0 - 1e-12) a += L, b += L;
      }
      if (lv < 0.0 && rv < 0.0) lv = rv = 1.0;
      if (lv < 0.0) lv = rv;
      if (rv < 0.0) rv = lv;
      emit(r.x0, a, lv, lv);
      emit(a, b, lv, rv);
      emit(b, r.x1, rv, rv);
    } else {
      double v;
      if (lv < 0.0 && rv < 0.0)
        v = 1.0;  // fully constant profile: theta unconstrained
      else if (lv < 0.0)
        v = rv;
      else if (rv < 0.0)
        v = lv;
      else if (lv == rv)
        v = lv;
      else
        throw AmbiguousTheta(
            "constant stretch with conflicting flanks and no declared plateau");
      emit(r.x0, r.x1, v, v);
    }
  }
  if (tf.pieces.empty()) {
    double lo = periodic ? 0.0 : d.x_min;
    double hi = periodic ? d.length() : d.x_max;
    tf.pieces.push_back({lo, hi, 1.0, 1.0});
  }
  return tf;
}

// ---------------------------------------------------------------------------
// theta_discontinuity

namespace {

struct ThetaSampler {
  const std::vector<ThetaPiece>* pieces;
  const std::vector<ThetaField::Atom>* atoms;

  // Oscillation of theta over [a, b], including atoms in [a, b].
  double osc(double a, double b) const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    auto take = [&](double v) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    };
    for (const auto& pc : *pieces) {
      if (pc.x1 < a || pc.x0 > b) continue;
      double xa = std::max(a, pc.x0), xb = std::min(b, pc.x1);
      auto at = [&](double x) {
        if (pc.x1 == pc.x0) return pc.v0;
        double t = (x - pc.x0) / (pc.x1 - pc.x0);
        return pc.v0 + t * (pc.v1 - pc.v0);
      };
      take(at(xa));
      take(at(xb));
    }
    for (const auto& atom : *atoms)
      if (atom.x >= a && atom.x <= b) take(atom.value);
    if (hi < lo) return 0.0;
    return hi - lo;
  }
};

}  // namespace

double theta_discontinuity(const ThetaField& t, double scale) {
  if (scale <= 0.0) throw ValidationError("scale", "scale must be positive");
  if (t.pieces.empty()) return 0.0;

  std::vector<ThetaPiece> pieces = t.pieces;
  std::vector<ThetaField::Atom> atoms = t.atoms;
  double lo, hi;
  if (t.domain.periodic_kind()) {
    double L = t.domain.length();
    scale = std::min(scale, L);
    std::size_t n = pieces.size();
    for (std::size_t i = 0; i < n; ++i) {
      ThetaPiece pc = pieces[i];
      pc.x0 += L;
      pc.x1 += L;
      pieces.push_back(pc);
    }
    std::size_t na = atoms.size();
    for (std::size_t i = 0; i < na; ++i)
      atoms.push_back({atoms[i].x + L, atoms[i].value});
    lo = t.pieces.front().x0;
    hi = lo + L;  // window starts range over one period
  } else {
    lo = t.pieces.front().x0;
    hi = std::max(lo, t.pieces.back().x1 - scale);
  }

  std::vector<double> starts;
  starts.push_back(lo);
  auto add = [&](double x) {
    if (x >= lo && x <= hi) starts.push_back(x);
    if (x - scale >= lo && x - scale <= hi) starts.push_back(x - scale);
  };
  for (const auto& pc : pieces) {
    add(pc.x0);
    add(pc.x1);
  }
  for (const auto& atom : atoms) add(atom.x);
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

  ThetaSampler sampler{&pieces, &atoms};
  double best = 0.0;
  for (double a : starts) best = std::max(best, sampler.osc(a, a + scale));
  return best;
}

}  // namespace gradflux
