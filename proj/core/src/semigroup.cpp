#include "gradflux/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gradflux {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kValueTol = 1e-12;  // level coincidence
constexpr double kTimeTol = 1e-13;   // event-time coincidence
}  // namespace

double plateau_rate(const FluxPair& fp, double level, double a, double b,
                    Orientation o) {
  if (!(b > a)) throw ZeroWidth("plateau has nonpositive width");
  double gap = fp.g(level) - fp.f(level);
  double w = b - a;
  return (o == Orientation::Max) ? -gap / w : gap / w;
}

double FrontState::seg_width(int j, double t) const {
  if (n_fronts() == 0) return domain.length();
  if (periodic()) {
    if (n_segments() == 1) return domain.length();
    double a = front_pos(left_front(j), t);
    double b = front_pos(right_front(j), t);
    double w = b - a;
    // coincident fronts mean a zero-width piece, not a full turn
    if (w < 0.0) w += domain.length();
    return w;
  }
  double a = (left_front(j) >= 0) ? front_pos(left_front(j), t) : domain.x_min;
  double b = (right_front(j) >= 0) ? front_pos(right_front(j), t) : domain.x_max;
  return b - a;
}

int FrontState::plateau_count() const {
  int c = 0;
  for (const auto& s : segments) c += (s.extremum != 0);
  return c;
}

namespace {

double rh_speed_pair(const FluxPair& fp, double ul, double ur) {
  const Flux& h = branch_flux(fp, branch_for(ul, ur));
  if (ul == ur) return h.d1(ul);
  return (h(ur) - h(ul)) / (ur - ul);
}

// ---------------------------------------------------------------------------
// construction

double quant(double v, double h) { return h * std::round(v / h); }

struct PcBuild {
  std::vector<double> cut;  // boundary positions
  std::vector<double> val;  // bounded: cut.size()+1; periodic: value right of each cut
};

// Staircase crossings of a strictly monotone ramp, appended as boundaries.
void add_ramp(std::vector<std::pair<double, double>>& bnd, double xa, double va,
              double xb, double vb, double h) {
  long long ka = std::llround(va / h), kb = std::llround(vb / h);
  if (ka == kb) return;
  double dv = vb - va, dx = xb - xa;
  if (kb > ka) {
    for (long long k = ka; k < kb; ++k) {
      double level = (double(k) + 0.5) * h;
      double c = xa + (level - va) / dv * dx;
      bnd.push_back({c, double(k + 1) * h});
    }
  } else {
    for (long long k = ka; k > kb; --k) {
      double level = (double(k) - 0.5) * h;
      double c = xa + (level - va) / dv * dx;
      bnd.push_back({c, double(k - 1) * h});
    }
  }
}

PcBuild quantize_profile(const Profile& p, double h) {
  const auto& nd = p.nodes();
  const Domain& d = p.domain();
  std::vector<std::pair<double, double>> bnd;  // (x, value right of x)

  auto right_limit_value = [&](std::size_t i) {
    // value of the quantized piece starting at node i's right side
    const auto& n = nd[i];
    bool last = (i + 1 == nd.size());
    double vb;
    if (d.periodic_kind()) {
      vb = nd[(i + 1) % nd.size()].u_left;
    } else {
      if (last) return n.u_right;  // constant extension keeps the exact value
      vb = nd[i + 1].u_left;
    }
    if (vb == n.u_right) return n.u_right;  // flat piece: exact value
    return quant(n.u_right, h);
  };

  double v_start;
  if (d.periodic_kind()) {
    const auto& lastn = nd.back();
    v_start = (lastn.u_right == nd.front().u_left)
                  ? lastn.u_right
                  : quant(nd.front().u_left, h);
  } else {
    v_start = nd.front().u_left;
  }

  double v_cur = v_start;
  for (std::size_t i = 0; i < nd.size(); ++i) {
    const auto& n = nd[i];
    double rv = right_limit_value(i);
    if (rv != v_cur) {
      bnd.push_back({n.x, rv});
      v_cur = rv;
    }
    bool last = (i + 1 == nd.size());
    if (!d.periodic_kind() && last) break;
    double xb, vb;
    if (d.periodic_kind() && last) {
      xb = nd.front().x + d.length();
      vb = nd.front().u_left;
    } else {
      xb = nd[i + 1].x;
      vb = nd[i + 1].u_left;
    }
    if (vb != n.u_right) {
      add_ramp(bnd, n.x, n.u_right, xb, vb, h);
      if (!bnd.empty()) v_cur = bnd.back().second;
    }
  }

  PcBuild pc;
  if (d.periodic_kind()) {
    double L = d.length();
    for (auto& b : bnd) {
      double x = std::fmod(b.first, L);
      if (x < 0.0) x += L;
      pc.cut.push_back(x);
      pc.val.push_back(b.second);
    }
    std::vector<std::size_t> idx(pc.cut.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b2) {
      return pc.cut[a] < pc.cut[b2];
    });
    PcBuild out;
    for (std::size_t i : idx) {
      out.cut.push_back(pc.cut[i]);
      out.val.push_back(pc.val[i]);
    }
    // merge equal adjacent values (cyclically); out.val[i] lives right of
    // out.cut[i], the piece left of out.cut[i] carries out.val[i-1 mod]
    for (;;) {
      bool changed = false;
      std::size_t m = out.cut.size();
      if (m < 2) break;
      for (std::size_t i = 0; i < m; ++i) {
        std::size_t prev = (i + m - 1) % m;
        if (out.cut[prev] == out.cut[i]) {
          // zero-width piece between equal cuts: drop the earlier boundary
          out.cut.erase(out.cut.begin() + long(prev));
          out.val.erase(out.val.begin() + long(prev));
          changed = true;
          break;
        }
        if (out.val[prev] == out.val[i]) {
          out.cut.erase(out.cut.begin() + long(i));
          out.val.erase(out.val.begin() + long(i));
          changed = true;
          break;
        }
      }
      if (!changed) break;
    }
    if (out.cut.size() == 1) {  // a single cut cannot separate anything
      double only = out.val[0];
      out.cut.clear();
      out.val.assign(1, only);
    }
    if (out.cut.empty() && out.val.empty()) out.val.assign(1, v_start);
    return out;
  }

  pc.val.push_back(v_start);
  const double edge_tol = 1e-12 * std::max(1.0, d.length());
  for (auto& b : bnd) {
    if (b.first <= d.x_min + edge_tol) {
      pc.val.back() = b.second;
      continue;
    }
    if (b.first >= d.x_max - edge_tol) break;
    pc.cut.push_back(b.first);
    pc.val.push_back(b.second);
  }
  for (std::size_t i = 0; i + 1 < pc.val.size();) {
    if (pc.val[i] == pc.val[i + 1]) {
      pc.cut.erase(pc.cut.begin() + long(i));
      pc.val.erase(pc.val.begin() + long(i + 1));
    } else {
      ++i;
    }
  }
  return pc;
}

}  // namespace

FrontState make_front_state(const Domain& d, const std::vector<double>& positions,
                            const std::vector<double>& values,
                            const FluxPair& fp, double h,
                            bool detect_plateaus) {
  FrontState s;
  s.domain = d;
  s.quantum = h;
  s.time = 0.0;
  s.anchor = 0.0;
  const std::size_t m = positions.size();
  if (d.periodic_kind()) {
    if (values.size() != m)
      throw ValidationError("values", "periodic pieces: need one value per cut");
  } else {
    if (values.size() != m + 1)
      throw ValidationError("values", "bounded pieces: need cuts+1 values");
  }
  for (std::size_t i = 0; i + 1 < m; ++i)
    if (!(positions[i] <= positions[i + 1]))
      throw ValidationError("positions", "front positions must be ordered");

  s.fronts.resize(m);
  for (std::size_t i = 0; i < m; ++i) s.fronts[i].x0 = positions[i];
  s.segments.resize(values.size());
  if (d.periodic_kind()) {
    // segment j spans [cut_j, cut_{j+1}); its value is the one right of cut j
    for (std::size_t j = 0; j < values.size(); ++j) s.segments[j].v0 = values[j];
  } else {
    for (std::size_t j = 0; j < values.size(); ++j) s.segments[j].v0 = values[j];
  }

  s.plateaus_enabled = detect_plateaus;
  if (detect_plateaus) {
    const int ns = s.n_segments();
    for (int j = 0; j < ns; ++j) {
      if (!d.periodic_kind() && (j == 0 || j == ns - 1)) continue;
      if (d.periodic_kind() && ns < 2) continue;
      double v = s.segments[std::size_t(j)].v0;
      double vl = s.segments[std::size_t((j + ns - 1) % ns)].v0;
      double vr = s.segments[std::size_t((j + 1) % ns)].v0;
      if (v > vl && v > vr) s.segments[std::size_t(j)].extremum = 1;
      if (v < vl && v < vr) s.segments[std::size_t(j)].extremum = -1;
    }
  }
  for (int i = 0; i < s.n_fronts(); ++i) {
    double ul = s.segments[std::size_t(s.left_seg(i))].v0;
    double ur = s.segments[std::size_t(s.right_seg(i))].v0;
    if (ul == ur) throw ValidationError("values", "zero jump between pieces");
    s.fronts[std::size_t(i)].speed = rh_speed_pair(fp, ul, ur);
  }
  s.next_resync = kInf;
  for (int j = 0; j < s.n_segments(); ++j) {
    Segment& seg = s.segments[std::size_t(j)];
    if (seg.extremum == 0) {
      seg.rate = 0.0;
      continue;
    }
    double w = s.seg_width(j, 0.0);
    seg.rate = plateau_rate(fp, seg.v0, 0.0, w,
                            seg.extremum > 0 ? Orientation::Max : Orientation::Min);
    if (seg.rate != 0.0)
      s.next_resync = std::min(s.next_resync, h / std::abs(seg.rate));
  }
  return s;
}

namespace {

FrontState build_from_profile(const Profile& p0, const FluxPair& fp, double h,
                              bool detect_plateaus) {
  if (!(h > 0.0)) throw ValidationError("h", "quantum must be positive");
  PcBuild pc = quantize_profile(p0, h);
  if (pc.cut.empty()) {
    FrontState s;
    s.domain = p0.domain();
    s.quantum = h;
    s.segments.resize(1);
    s.segments[0].v0 = pc.val.empty() ? 0.0 : pc.val[0];
    return s;
  }
  // Re-solve every jump as an entropy fan, splicing intermediate states in.
  const bool periodic = p0.domain().periodic_kind();
  std::vector<double> cut, val;
  std::vector<WaveKind> kinds;
  const std::size_t m = pc.cut.size();
  if (!periodic) val.push_back(pc.val[0]);
  for (std::size_t i = 0; i < m; ++i) {
    double a = periodic ? pc.val[(i + m - 1) % m] : pc.val[i];
    double b = periodic ? pc.val[i] : pc.val[i + 1];
    WaveFan fan = solve_riemann(a, b, fp, h);
    for (const auto& w : fan.waves) {
      cut.push_back(pc.cut[i]);
      kinds.push_back(w.kind);
      val.push_back(w.u_after);
    }
  }
  // periodic: val holds, per front, the state right of it == segment value
  FrontState s = make_front_state(p0.domain(), cut, val, fp, h, detect_plateaus);
  for (std::size_t i = 0; i < kinds.size(); ++i) s.fronts[i].kind = kinds[i];
  return s;
}

}  // namespace

FrontState init_fronts(const Profile& p0, const FluxPair& fp, double h) {
  return build_from_profile(p0, fp, h, true);
}

FrontState init_fronts_single_branch(const Profile& p0, const FluxPair& fp,
                                     double h) {
  return build_from_profile(p0, fp, h, false);
}

// ---------------------------------------------------------------------------
// dynamics

namespace {

// Rotate the circular front/segment arrays left by r so that structural
// edits become contiguous (periodic domains only).
void rotate_state(FrontState& s, int r) {
  if (!s.periodic() || r == 0) return;
  std::rotate(s.fronts.begin(), s.fronts.begin() + r, s.fronts.end());
  std::rotate(s.segments.begin(), s.segments.begin() + r, s.segments.end());
}

// Restore the ascending-from-index-0 circular order that the event
// predictor's wrap-gap formula relies on.
void normalize_rotation(FrontState& s) {
  if (!s.periodic() || s.fronts.empty()) return;
  int m = s.n_fronts();
  int mini = 0;
  for (int i = 1; i < m; ++i)
    if (s.fronts[std::size_t(i)].x0 < s.fronts[std::size_t(mini)].x0) mini = i;
  rotate_state(s, mini);
}

void re_anchor(FrontState& s, double t) {
  for (auto& f : s.fronts) f.x0 = f.x0 + f.speed * (t - s.anchor);
  for (auto& sg : s.segments) sg.v0 = sg.v0 + sg.rate * (t - s.anchor);
  s.anchor = t;
  s.time = t;
  if (s.periodic() && !s.fronts.empty()) {
    double L = s.domain.length();
    for (auto& f : s.fronts) {
      f.x0 = std::fmod(f.x0, L);
      if (f.x0 < 0.0) f.x0 += L;
    }
    normalize_rotation(s);
  }
}

void refresh_extremum(FrontState& s, int j) {
  const int ns = s.n_segments();
  if (j < 0 || j >= ns) return;
  Segment& seg = s.segments[std::size_t(j)];
  seg.extremum = 0;
  if (!s.plateaus_enabled) return;
  if (!s.periodic() && (j == 0 || j == ns - 1)) return;
  if (s.periodic() && ns < 2) return;
  double v = seg.v0;
  double vl = s.segments[std::size_t((j + ns - 1) % ns)].v0;
  double vr = s.segments[std::size_t((j + 1) % ns)].v0;
  if (v > vl && v > vr) seg.extremum = 1;
  if (v < vl && v < vr) seg.extremum = -1;
}

void refresh_extremum_around(FrontState& s, int j) {
  const int ns = s.n_segments();
  if (ns == 0) return;
  int jm = std::min(std::max(j, 0), ns - 1);
  refresh_extremum(s, jm);
  if (s.periodic()) {
    refresh_extremum(s, (jm + ns - 1) % ns);
    refresh_extremum(s, (jm + 1) % ns);
  } else {
    refresh_extremum(s, jm - 1);
    refresh_extremum(s, jm + 1);
  }
}

// Merge segment pair around front `fi` after that front lost its jump or an
// absorption/merge removed it.  The pair is (left_seg(fi), right_seg(fi)).
// merged_v is the level of the union piece.  Assumes anchors current.
void remove_front_merge_segments(FrontState& s, int fi, double merged_v) {
  if (s.periodic()) {
    const int m = s.n_fronts();
    rotate_state(s, fi);
    // now the front is index 0; left seg = m-1 (wrap), right seg = 0
    s.fronts.erase(s.fronts.begin());
    Segment merged;
    merged.v0 = merged_v;
    if (m == 1) {
      s.segments.assign(1, merged);
      return;
    }
    s.segments.erase(s.segments.begin());  // old right seg
    s.segments.back() = merged;            // old left seg becomes the union
    refresh_extremum_around(s, s.n_segments() - 1);
    refresh_extremum_around(s, 0);
    return;
  }
  // bounded: left seg = fi, right seg = fi+1
  s.fronts.erase(s.fronts.begin() + fi);
  Segment merged;
  merged.v0 = merged_v;
  s.segments[std::size_t(fi)] = merged;
  s.segments.erase(s.segments.begin() + fi + 1);
  refresh_extremum_around(s, fi);
}

void cleanup_zero_fronts(FrontState& s) {
  for (;;) {
    bool removed = false;
    for (int i = 0; i < s.n_fronts(); ++i) {
      double ul = s.segments[std::size_t(s.left_seg(i))].v0;
      double ur = s.segments[std::size_t(s.right_seg(i))].v0;
      double scale = std::max({1.0, std::abs(ul), std::abs(ur)});
      if (std::abs(ur - ul) > kValueTol * scale) continue;
      double wl = s.seg_width(s.left_seg(i), s.time);
      double wr = s.seg_width(s.right_seg(i), s.time);
      double mv = (wl + wr > 0.0) ? (ul * wl + ur * wr) / (wl + wr) : ul;
      remove_front_merge_segments(s, i, mv);
      removed = true;
      break;
    }
    if (!removed) return;
  }
}

void recompute_dynamics(FrontState& s, const FluxPair& fp) {
  cleanup_zero_fronts(s);
  normalize_rotation(s);
  for (int i = 0; i < s.n_fronts(); ++i) {
    double ul = s.segments[std::size_t(s.left_seg(i))].v0;
    double ur = s.segments[std::size_t(s.right_seg(i))].v0;
    s.fronts[std::size_t(i)].speed = rh_speed_pair(fp, ul, ur);
  }
  s.next_resync = kInf;
  for (int j = 0; j < s.n_segments(); ++j) {
    Segment& seg = s.segments[std::size_t(j)];
    if (seg.extremum == 0) {
      seg.rate = 0.0;
      continue;
    }
    double w = s.seg_width(j, s.time);
    if (!(w > 0.0)) {
      seg.rate = 0.0;
      continue;
    }
    seg.rate = plateau_rate(fp, seg.v0, 0.0, w,
                            seg.extremum > 0 ? Orientation::Max : Orientation::Min);
    if (seg.rate != 0.0)
      s.next_resync =
          std::min(s.next_resync, s.time + s.quantum / std::abs(seg.rate));
  }
}

struct Candidate {
  double t = kInf;
  enum class What { None, Collision, Absorption, Merge, Boundary } what = What::None;
  int index = -1;  // collision/boundary: front; absorption/merge: segment
  int side = 0;
  double x = 0.0;
};

Candidate predict_next(const FrontState& s) {
  Candidate best;
  const int m = s.n_fronts();
  const double ta = s.anchor;
  const double L = s.domain.length();

  auto consider = [&](double t, Candidate::What what, int index, int side,
                      double x) {
    if (t < s.time) t = s.time;
    bool better;
    if (best.what == Candidate::What::None)
      better = (t < kInf);
    else if (t < best.t - kTimeTol)
      better = true;
    else if (t <= best.t + kTimeTol)
      better = (x < best.x);  // simultaneous events go left to right
    else
      better = false;
    if (better) {
      double tt = (best.what == Candidate::What::None) ? t : std::min(t, best.t);
      best = {tt, what, index, side, x};
    }
  };

  int pairs = s.periodic() ? m : m - 1;
  for (int i = 0; i < pairs; ++i) {
    int j = (i + 1) % m;
    double rel =
        s.fronts[std::size_t(i)].speed - s.fronts[std::size_t(j)].speed;
    if (rel <= 0.0) continue;
    double gap =
        s.fronts[std::size_t(j)].x0 - s.fronts[std::size_t(i)].x0;
    if (s.periodic() && j == 0) gap += L;
    if (gap < 0.0) gap = 0.0;
    double t = ta + gap / rel;
    consider(t, Candidate::What::Collision, i, 0,
             s.fronts[std::size_t(i)].x0 +
                 s.fronts[std::size_t(i)].speed * (t - ta));
  }
  if (!s.periodic() && m > 0) {
    const Front& f0 = s.fronts.front();
    if (f0.speed < 0.0)
      consider(ta + (s.domain.x_min - f0.x0) / f0.speed,
               Candidate::What::Boundary, 0, 0, s.domain.x_min);
    const Front& fl = s.fronts.back();
    if (fl.speed > 0.0)
      consider(ta + (s.domain.x_max - fl.x0) / fl.speed,
               Candidate::What::Boundary, m - 1, 0, s.domain.x_max);
  }
  const int ns = s.n_segments();
  for (int j = 0; j < ns; ++j) {
    const Segment& seg = s.segments[std::size_t(j)];
    if (seg.extremum == 0) continue;
    for (int side : {-1, +1}) {
      int k;
      if (s.periodic()) {
        k = (j + (side > 0 ? 1 : ns - 1)) % ns;
        if (k == j) continue;
      } else {
        k = j + side;
        if (k < 0 || k >= ns) continue;
      }
      const Segment& nb = s.segments[std::size_t(k)];
      double dr = seg.rate - nb.rate;
      if (dr == 0.0) continue;
      double t = ta + (nb.v0 - seg.v0) / dr;
      if (t < s.time - kTimeTol) continue;
      int fi = (side > 0) ? s.right_front(j) : s.left_front(j);
      double x = (fi >= 0) ? s.fronts[std::size_t(fi)].x0 : s.domain.x_min;
      consider(t,
               nb.extremum != 0 ? Candidate::What::Merge
                                : Candidate::What::Absorption,
               j, side, x);
    }
  }
  return best;
}

struct EventSink {
  std::vector<FTEvent>* out;
  long long count = 0;
  void log(double t, FTEvent::Kind k, double x, double tvb, double tva) {
    ++count;
    if (count > 10'000'000)
      throw EventOverflow("more than 1e7 front-tracking events");
    if (out) out->push_back({t, k, x, tvb, tva});
  }
};

void process_collision(FrontState& s, const FluxPair& fp, int i,
                       EventSink& sink) {
  double tvb = front_state_tv(s);
  double x;
  double a, b;
  if (s.periodic()) {
    rotate_state(s, i);
    // colliding pair is now (0, 1); middle = seg 0; outer = seg m-1 / seg 1
    const int m = s.n_fronts();
    x = s.fronts[0].x0;
    a = s.segments[std::size_t(m - 1)].v0;
    b = (m >= 2) ? s.segments[1].v0 : a;
    s.fronts.erase(s.fronts.begin(), s.fronts.begin() + 2);
    s.segments.erase(s.segments.begin());  // the vanished middle piece
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    if (std::abs(a - b) <= kValueTol * scale || s.fronts.empty()) {
      Segment merged;
      merged.v0 = a;
      if (s.fronts.empty()) {
        s.segments.assign(1, merged);
      } else {
        // outer right is now seg 0, outer left is the last: fuse into last
        merged.v0 = a;
        s.segments.back() = merged;
        s.segments.erase(s.segments.begin());
        refresh_extremum_around(s, s.n_segments() - 1);
        refresh_extremum_around(s, 0);
      }
    } else {
      WaveFan fan = solve_riemann(a, b, fp, s.quantum);
      std::vector<Front> nf;
      std::vector<Segment> nseg;
      for (std::size_t w = 0; w + 1 < fan.waves.size(); ++w) {
        Segment sg;
        sg.v0 = fan.waves[w].u_after;
        nseg.push_back(sg);
      }
      for (const auto& w : fan.waves)
        nf.push_back({x, w.speed, w.kind});
      s.fronts.insert(s.fronts.begin(), nf.begin(), nf.end());
      s.segments.insert(s.segments.begin(), nseg.begin(), nseg.end());
      refresh_extremum_around(s, s.n_segments() - 1);
      refresh_extremum_around(s, int(nseg.size()) % s.n_segments());
    }
  } else {
    x = s.fronts[std::size_t(i)].x0;
    a = s.segments[std::size_t(i)].v0;      // left outer
    b = s.segments[std::size_t(i + 2)].v0;  // right outer
    s.fronts.erase(s.fronts.begin() + i, s.fronts.begin() + i + 2);
    s.segments.erase(s.segments.begin() + i + 1);  // middle
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    if (std::abs(a - b) <= kValueTol * scale) {
      Segment merged;
      merged.v0 = a;
      s.segments[std::size_t(i)] = merged;
      s.segments.erase(s.segments.begin() + i + 1);
      refresh_extremum_around(s, i);
    } else {
      WaveFan fan = solve_riemann(a, b, fp, s.quantum);
      std::vector<Front> nf;
      std::vector<Segment> nseg;
      for (std::size_t w = 0; w + 1 < fan.waves.size(); ++w) {
        Segment sg;
        sg.v0 = fan.waves[w].u_after;
        nseg.push_back(sg);
      }
      for (const auto& w : fan.waves)
        nf.push_back({x, w.speed, w.kind});
      s.fronts.insert(s.fronts.begin() + i, nf.begin(), nf.end());
      s.segments.insert(s.segments.begin() + i + 1, nseg.begin(), nseg.end());
      refresh_extremum_around(s, i);
      refresh_extremum_around(s, i + int(nseg.size()) + 1);
    }
  }
  recompute_dynamics(s, fp);
  sink.log(s.time, FTEvent::Kind::Collision, x, tvb, front_state_tv(s));
}

void process_level_event(FrontState& s, const FluxPair& fp, int j, int side,
                         bool is_merge, EventSink& sink) {
  double tvb = front_state_tv(s);
  const int ns = s.n_segments();
  int k;
  if (s.periodic())
    k = (j + (side > 0 ? 1 : ns - 1)) % ns;
  else
    k = j + side;
  int fi = (side > 0) ? s.right_front(j) : s.left_front(j);

  double wj = s.seg_width(j, s.time), wk = s.seg_width(k, s.time);
  double vj = s.segments[std::size_t(j)].v0, vk = s.segments[std::size_t(k)].v0;
  double merged_v;
  if (is_merge)
    merged_v = (wj + wk > 0.0) ? (vj * wj + vk * wk) / (wj + wk) : vk;
  else
    merged_v = vk;  // absorbed plain piece keeps its exact level

  double x = (fi >= 0) ? s.fronts[std::size_t(fi)].x0
                       : (side > 0 ? s.domain.x_max : s.domain.x_min);
  remove_front_merge_segments(s, fi, merged_v);
  recompute_dynamics(s, fp);
  sink.log(s.time, is_merge ? FTEvent::Kind::Merge : FTEvent::Kind::Absorption,
           x, tvb, front_state_tv(s));
}

void process_boundary(FrontState& s, const FluxPair& fp, int i,
                      EventSink& sink) {
  double tvb = front_state_tv(s);
  double x = s.fronts[std::size_t(i)].x0;
  int edge_seg = (i == 0) ? 0 : s.n_segments() - 1;
  s.fronts.erase(s.fronts.begin() + i);
  s.segments.erase(s.segments.begin() + edge_seg);
  refresh_extremum_around(s, (i == 0) ? 0 : s.n_segments() - 1);
  recompute_dynamics(s, fp);
  sink.log(s.time, FTEvent::Kind::Boundary, x, tvb, front_state_tv(s));
}

}  // namespace

void advance_to(FrontState& s, const FluxPair& fp, double t_target,
                std::vector<FTEvent>* events) {
  if (t_target < s.time)
    throw ValidationError("t_target", "cannot advance backwards");
  EventSink sink{events};
  while (s.time < t_target) {
    Candidate c = predict_next(s);
    double stop = std::min(s.next_resync, t_target);
    if (c.what != Candidate::What::None && c.t <= stop) {
      re_anchor(s, c.t);
      for (;;) {
        Candidate due = predict_next(s);
        if (due.what == Candidate::What::None || due.t > s.time + kTimeTol)
          break;
        switch (due.what) {
          case Candidate::What::Collision:
            process_collision(s, fp, due.index, sink);
            break;
          case Candidate::What::Absorption:
            process_level_event(s, fp, due.index, due.side, false, sink);
            break;
          case Candidate::What::Merge:
            process_level_event(s, fp, due.index, due.side, true, sink);
            break;
          case Candidate::What::Boundary:
            process_boundary(s, fp, due.index, sink);
            break;
          case Candidate::What::None:
            break;
        }
        if (s.n_fronts() == 0) break;
      }
      continue;
    }
    if (s.next_resync <= t_target) {
      re_anchor(s, s.next_resync);
      recompute_dynamics(s, fp);
      continue;
    }
    s.time = t_target;  // no re-anchor: keeps restarts bit-identical
  }
}

void reanchor_snapshot(FrontState& s, const FluxPair& fp, double t) {
  re_anchor(s, t);
  recompute_dynamics(s, fp);
}

std::pair<FrontState, std::vector<FTEvent>> advance(const FrontState& s,
                                                    const FluxPair& fp,
                                                    double dt_max) {
  FrontState out = s;
  std::vector<FTEvent> ev;
  advance_to(out, fp, out.time + dt_max, &ev);
  return {std::move(out), std::move(ev)};
}

Profile snapshot_to_profile(const FrontState& s) {
  const double t = s.time;
  if (s.n_fronts() == 0)
    return Profile::constant(s.domain,
                             s.segments.empty() ? 0.0 : s.segments[0].v0);
  std::vector<ProfileNode> nodes;
  nodes.reserve(std::size_t(s.n_fronts()));
  for (int i = 0; i < s.n_fronts(); ++i) {
    nodes.push_back(
        {s.front_pos(i, t), s.front_u_left(i, t), s.front_u_right(i, t)});
  }
  if (s.periodic()) {
    double L = s.domain.length();
    for (auto& n : nodes) {
      n.x = std::fmod(n.x, L);
      if (n.x < 0.0) n.x += L;
    }
    // stable: coincident fronts (freshly inserted fans) must keep their
    // chain order so the merged jump reads u_left of the first through
    // u_right of the last
    std::stable_sort(nodes.begin(), nodes.end(),
                     [](const ProfileNode& a, const ProfileNode& b) {
                       return a.x < b.x;
                     });
  }
  for (std::size_t i = 0; i + 1 < nodes.size();) {
    if (!(nodes[i].x < nodes[i + 1].x)) {
      nodes[i].u_right = nodes[i + 1].u_right;
      nodes.erase(nodes.begin() + long(i) + 1);
    } else {
      ++i;
    }
  }
  return Profile(s.domain, std::move(nodes));
}

std::vector<PlateauSpec> plateau_intervals(const FrontState& s) {
  std::vector<PlateauSpec> out;
  const double t = s.time;
  for (int j = 0; j < s.n_segments(); ++j) {
    if (s.segments[std::size_t(j)].extremum == 0) continue;
    int lf = s.left_front(j), rf = s.right_front(j);
    double a = (lf >= 0) ? s.front_pos(lf, t) : s.domain.x_min;
    double b = (rf >= 0) ? s.front_pos(rf, t) : s.domain.x_max;
    if (s.periodic()) {
      double L = s.domain.length();
      a = std::fmod(a, L);
      if (a < 0.0) a += L;
      b = std::fmod(b, L);
      if (b < 0.0) b += L;
      if (b <= a) b += L;
    }
    out.push_back({a, b});
  }
  return out;
}

std::vector<Orientation> plateau_orientations(const FrontState& s) {
  std::vector<Orientation> out;
  for (const auto& seg : s.segments)
    if (seg.extremum != 0)
      out.push_back(seg.extremum > 0 ? Orientation::Max : Orientation::Min);
  return out;
}

ThetaField snapshot_theta(const FrontState& s) {
  return reconstruct_theta(snapshot_to_profile(s), plateau_intervals(s));
}

double front_state_tv(const FrontState& s) {
  long double tv = 0.0L;
  const double t = s.time;
  for (int i = 0; i < s.n_fronts(); ++i)
    tv += std::abs(s.front_u_right(i, t) - s.front_u_left(i, t));
  return double(tv);
}

double front_state_mass(const FrontState& s) {
  const double t = s.time;
  if (s.n_fronts() == 0)
    return s.segments.empty() ? 0.0 : s.segments[0].v0 * s.domain.length();
  long double m = 0.0L;
  for (int j = 0; j < s.n_segments(); ++j)
    m += (long double)s.seg_value(j, t) * (long double)s.seg_width(j, t);
  return double(m);
}

SemigroupRun run_semigroup(const Profile& p0, const FluxPair& fp, double h,
                           double t_end, std::vector<double> snapshot_times) {
  snapshot_times.push_back(0.0);
  snapshot_times.push_back(t_end);
  std::sort(snapshot_times.begin(), snapshot_times.end());
  snapshot_times.erase(
      std::unique(snapshot_times.begin(), snapshot_times.end()),
      snapshot_times.end());
  if (snapshot_times.front() < 0.0 || snapshot_times.back() > t_end)
    throw ValidationError("snapshots", "snapshot times outside [0, t_end]");

  SemigroupRun run;
  run.quantum = h;
  FrontState s = init_fronts(p0, fp, h);
  for (double t : snapshot_times) {
    advance_to(s, fp, t, &run.events);
    FrontState frozen = s;
    reanchor_snapshot(frozen, fp, t);
    SemigroupSnapshot snap{t, snapshot_to_profile(frozen),
                           snapshot_theta(frozen), frozen, 0.0, 0.0};
    snap.mass = front_state_mass(frozen);
    snap.tv = front_state_tv(frozen);
    run.snapshots.push_back(std::move(snap));
  }
  return run;
}

}  // namespace gradflux
