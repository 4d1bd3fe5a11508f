#include "gradflux/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace gradflux {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double wrap_x(const Domain& d, double x) {
  if (!d.periodic_kind()) return x;
  double L = d.length();
  double r = std::fmod(x, L);
  if (r < 0.0) r += L;
  return r;
}

double theta_right_limit(const ThetaField& t, double x) { return t.eval(x); }

double theta_left_limit(const ThetaField& t, double x) {
  if (t.pieces.empty()) return 1.0;
  double xx = x;
  if (t.domain.periodic_kind()) {
    xx = wrap_x(t.domain, x);
    if (xx < t.pieces.front().x0) xx += t.domain.length();
    if (xx == t.pieces.front().x0) xx += t.domain.length();  // wrap the limit
  }
  const auto& ps = t.pieces;
  for (std::size_t i = ps.size(); i-- > 0;) {
    if (ps[i].x0 < xx && xx <= ps[i].x1) {
      if (ps[i].x1 == ps[i].x0) return ps[i].v0;
      double s = (xx - ps[i].x0) / (ps[i].x1 - ps[i].x0);
      return ps[i].v0 + s * (ps[i].v1 - ps[i].v0);
    }
  }
  return t.eval(x);
}

}  // namespace

void write_snapshot_csv(std::ostream& os, const Profile& p,
                        const ThetaField& t) {
  const Domain& d = p.domain();
  std::vector<double> xs;
  for (const auto& n : p.nodes()) xs.push_back(n.x);
  for (const auto& pc : t.pieces) {
    xs.push_back(wrap_x(d, pc.x0));
    xs.push_back(wrap_x(d, pc.x1));
  }
  if (!d.periodic_kind()) {
    xs.push_back(d.x_min);
    xs.push_back(d.x_max);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (d.periodic_kind())
    while (!xs.empty() && xs.back() >= d.length()) xs.pop_back();

  // materialize isolated theta values as narrow ramps
  struct AtomRow {
    double x;
    double value;
  };
  std::vector<AtomRow> atoms;
  std::vector<double> guard;
  for (const auto& a : t.atoms) {
    double ax = wrap_x(d, a.x);
    double lv = theta_left_limit(t, ax), rv = theta_right_limit(t, ax);
    if (std::abs(a.value - lv) < 1e-12 && std::abs(a.value - rv) < 1e-12)
      continue;
    double gap = d.length();
    for (double x : xs)
      if (x != ax) gap = std::min(gap, std::abs(x - ax));
    double eta = std::min(1e-9 * std::max(1.0, d.length()), 0.25 * gap);
    atoms.push_back({ax, a.value});
    guard.push_back(ax - eta);
    guard.push_back(ax + eta);
  }
  for (double g : guard) xs.push_back(g);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  auto atom_at = [&](double x) -> const AtomRow* {
    for (const auto& a : atoms)
      if (a.x == x) return &a;
    return nullptr;
  };

  os << "x,u,theta\n";
  for (double x : xs) {
    double ul = p.eval_left(x), ur = p.eval_right(x);
    double tl = theta_left_limit(t, x), tr = theta_right_limit(t, x);
    if (const AtomRow* a = atom_at(x)) tl = tr = a->value;
    if (ul == ur && tl == tr) {
      os << format_double(x) << ',' << format_double(ur) << ','
         << format_double(tr) << '\n';
    } else {
      os << format_double(x) << ',' << format_double(ul) << ','
         << format_double(tl) << '\n';
      os << format_double(x) << ',' << format_double(ur) << ','
         << format_double(tr) << '\n';
    }
  }
}

void write_snapshot_csv(const std::string& path, const Profile& p,
                        const ThetaField& t) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  write_snapshot_csv(f, p, t);
}

std::pair<Profile, ThetaField> read_snapshot_csv(std::istream& is,
                                                 const Domain& d) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,u,theta", 0) != 0)
    throw ParseError("snapshot CSV must start with header x,u,theta");
  struct Row {
    double x, u, theta;
  };
  std::vector<Row> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    Row r{};
    char c1, c2;
    if (!(ls >> r.x >> c1 >> r.u >> c2 >> r.theta) || c1 != ',' || c2 != ',')
      throw ParseError("bad CSV row at line " + std::to_string(lineno));
    rows.push_back(r);
  }
  if (rows.empty()) throw ParseError("snapshot CSV has no rows");

  std::vector<ProfileNode> nodes;
  ThetaField tf;
  tf.domain = d;
  std::vector<double> px, t_left, t_right;
  for (std::size_t i = 0; i < rows.size();) {
    if (i + 1 < rows.size() && rows[i + 1].x == rows[i].x) {
      nodes.push_back({rows[i].x, rows[i].u, rows[i + 1].u});
      px.push_back(rows[i].x);
      t_left.push_back(rows[i].theta);
      t_right.push_back(rows[i + 1].theta);
      i += 2;
    } else {
      nodes.push_back({rows[i].x, rows[i].u, rows[i].u});
      px.push_back(rows[i].x);
      t_left.push_back(rows[i].theta);
      t_right.push_back(rows[i].theta);
      i += 1;
    }
  }
  for (std::size_t i = 0; i + 1 < px.size(); ++i)
    tf.pieces.push_back({px[i], px[i + 1], t_right[i], t_left[i + 1]});
  if (d.periodic_kind() && !px.empty())
    tf.pieces.push_back(
        {px.back(), px.front() + d.length(), t_right.back(), t_left.front()});
  return {Profile(d, std::move(nodes)), std::move(tf)};
}

std::pair<Profile, ThetaField> read_snapshot_csv(const std::string& path,
                                                 const Domain& d) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open '" + path + "' for reading");
  return read_snapshot_csv(f, d);
}

}  // namespace gradflux
