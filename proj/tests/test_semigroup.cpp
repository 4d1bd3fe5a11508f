#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gradflux/semigroup.hpp"
#include "oracles.hpp"

using namespace gradflux;

TEST_SUITE_BEGIN("semigroup");

namespace {

FluxPair standard_pair() {
  return make_flux_pair("burgers", "burgers_plus_1", -3.0, 3.0, 1000);
}

Profile example_profile(double sample_dx = 1.0 / 400.0) {
  Domain dom = Domain::bounded(-5.0, 5.0);
  std::vector<ProfileNode> nodes;
  int n = int(std::lround(5.0 / sample_dx));
  for (int k = -n; k < 0; ++k) {
    double x = double(k) * sample_dx;
    nodes.push_back({x, std::exp(x), std::exp(x)});
  }
  nodes.push_back({0.0, 1.0, -1.0});
  for (int k = 1; k <= n; ++k) {
    double x = double(k) * sample_dx;
    nodes.push_back({x, -std::exp(-x), -std::exp(-x)});
  }
  return Profile(dom, std::move(nodes));
}

Profile sine_profile(int n = 2000) {
  return Profile::sample(
      Domain::periodic(1.0),
      [](double x) { return 0.5 * std::sin(2.0 * M_PI * x); }, n);
}

Profile random_pc_profile(double tv_budget) {
  int n = 3 + int(oracle::uniform(0, 5));
  std::vector<double> cuts;
  for (int i = 0; i < n; ++i) cuts.push_back(oracle::uniform(0.0, 1.0));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<ProfileNode> nodes;
  double prev = oracle::uniform(-1.0, 1.0);
  double tv = 0.0;
  for (double c : cuts) {
    double next = oracle::uniform(-1.0, 1.0);
    tv += std::abs(next - prev);
    nodes.push_back({c, prev, next});
    prev = next;
  }
  Profile p(Domain::periodic(1.0), std::move(nodes));
  if (tv > tv_budget) {
    std::vector<ProfileNode> scaled;
    for (auto nd : p.nodes())
      scaled.push_back({nd.x, nd.u_left * tv_budget / tv, nd.u_right * tv_budget / tv});
    return Profile(Domain::periodic(1.0), std::move(scaled));
  }
  return p;
}

}  // namespace

TEST_CASE("plateau level rates") {
  FluxPair fp = standard_pair();
  CHECK(plateau_rate(fp, 1.0, 0.0, 0.5, Orientation::Max) == doctest::Approx(-2.0));
  CHECK(plateau_rate(fp, -1.0, 0.0, 0.25, Orientation::Min) == doctest::Approx(4.0));
  Flux f = parse_flux_spec("burgers");
  Flux g = Flux::custom(
      [](double u) { return 0.5 * u * u + 1.0 + 0.1 * std::sin(u); },
      [](double u) { return u + 0.1 * std::cos(u); },
      [](double u) { return 1.0 - 0.1 * std::sin(u); }, "wavy");
  FluxPair wavy = make_flux_pair(f, g, -3.0, 3.0);
  CHECK(plateau_rate(wavy, 0.3, 0.0, 1.0, Orientation::Max) ==
        doctest::Approx(-(1.0 + 0.1 * std::sin(0.3))).epsilon(1e-12));
  CHECK_THROWS_AS(plateau_rate(fp, 1.0, 0.5, 0.5, Orientation::Max), ZeroWidth);
}

TEST_CASE("constant data initializes to the trivial state") {
  FluxPair fp = standard_pair();
  FrontState s = init_fronts(Profile::constant(Domain::periodic(1.0), 0.3), fp, 0.02);
  CHECK(s.n_fronts() == 0);
  CHECK(s.plateau_count() == 0);
  auto [s2, ev] = advance(s, fp, 1.0);
  CHECK(s2.n_fronts() == 0);
  CHECK(ev.empty());
  CHECK(snapshot_to_profile(s2).eval_right(0.4) == 0.3);
}

TEST_CASE("flagship data initializes with one shock and two plateaus") {
  FluxPair fp = standard_pair();
  FrontState s = init_fronts(example_profile(1.0 / 200.0), fp, 0.05);
  CHECK(s.plateau_count() == 2);
  auto orients = plateau_orientations(s);
  REQUIRE(orients.size() == 2);
  CHECK(orients[0] == Orientation::Max);
  CHECK(orients[1] == Orientation::Min);
  int down = 0;
  for (int i = 0; i < s.n_fronts(); ++i) {
    double ul = s.front_u_left(i, 0.0), ur = s.front_u_right(i, 0.0);
    if (ur < ul) {
      ++down;
      CHECK(s.front_pos(i, 0.0) == 0.0);
      CHECK(ul == doctest::Approx(1.0));
      CHECK(ur == doctest::Approx(-1.0));
    } else {
      CHECK(std::abs(ur - ul) <= 0.05 + 1e-12);  // f-steps of one quantum
    }
  }
  CHECK(down == 1);
  auto iv = plateau_intervals(s);
  REQUIRE(iv.size() == 2);
  CHECK(iv[0].b == doctest::Approx(0.0));
  CHECK(iv[1].a == doctest::Approx(0.0));
}

TEST_CASE("sine data quantizes to the closed-form staircase") {
  FluxPair fp = standard_pair();
  double h = 0.1;
  FrontState s = init_fronts(sine_profile(), fp, h);
  CHECK(s.plateau_count() == 2);
  for (int k = 0; k < 5; ++k) {
    double level = (double(k) + 0.5) * h;
    double x_oracle = std::asin(level / 0.5) / (2.0 * M_PI);
    bool found = false;
    for (int i = 0; i < s.n_fronts(); ++i)
      if (std::abs(s.front_pos(i, 0.0) - x_oracle) < 1e-3) found = true;
    CHECK(found);
  }
  for (int j = 0; j < s.n_segments(); ++j) {
    if (s.segments[std::size_t(j)].extremum == 1)
      CHECK(s.segments[std::size_t(j)].v0 == doctest::Approx(0.5));
    if (s.segments[std::size_t(j)].extremum == -1)
      CHECK(s.segments[std::size_t(j)].v0 == doctest::Approx(-0.5));
  }
}

TEST_CASE("stationary shock stays at the origin exactly") {
  FluxPair fp = standard_pair();
  Profile p0 = Profile::step(Domain::bounded(-2.0, 2.0), 1.0, -1.0, 0.0);
  SemigroupRun run = run_semigroup(p0, fp, 0.02, 0.5, {0.25, 0.5});
  CHECK(run.events.empty());
  for (const auto& snap : run.snapshots) {
    REQUIRE(snap.u.nodes().size() == 1);
    CHECK(snap.u.nodes()[0].x == 0.0);  // bit-exact
    CHECK(snap.u.nodes()[0].u_left == 1.0);
    CHECK(snap.u.nodes()[0].u_right == -1.0);
  }
}

TEST_CASE("frozen-flank plateau follows its exact level law") {
  FluxPair fp = standard_pair();
  FrontState s = make_front_state(Domain::bounded(-3.0, 3.0), {-0.25, 0.25},
                                  {-1.0, 1.0, -1.0}, fp, 0.05);
  REQUIRE(s.plateau_count() == 1);
  CHECK(s.segments[1].rate == doctest::Approx(-2.0));
  for (double t : {0.013, 0.05, 0.08, 0.1}) {
    advance_to(s, fp, t);
    CHECK(std::abs(s.seg_value(1, t) - (1.0 - 2.0 * t)) < 1e-12);
    CHECK(s.seg_width(1, t) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("absorption widens the plateau and costs two quanta of variation") {
  FluxPair fp = standard_pair();
  double h = 0.1;
  FrontState s = make_front_state(Domain::bounded(0.0, 2.0), {0.3, 0.5, 0.7},
                                  {0.0, 0.9, 1.0, 0.0}, fp, h);
  REQUIRE(s.plateau_count() == 1);
  double tv0 = front_state_tv(s);
  CHECK(tv0 == doctest::Approx(2.0));
  std::vector<FTEvent> ev;
  advance_to(s, fp, 0.05, &ev);
  REQUIRE(!ev.empty());
  CHECK(ev[0].kind == FTEvent::Kind::Absorption);
  CHECK(front_state_tv(s) <= tv0 - 2.0 * h + 1e-10);
  CHECK(s.plateau_count() == 1);  // still a plateau, now wider
  for (int j = 0; j < s.n_segments(); ++j)
    if (s.segments[std::size_t(j)].extremum == 1)
      CHECK(s.seg_value(j, s.time) <= 0.9 + 1e-12);
}

TEST_CASE("adjacent max and min plateaus merge into a constant") {
  FluxPair fp = standard_pair();
  FrontState s = make_front_state(Domain::periodic(1.0), {0.0, 0.5},
                                  {1.0, -1.0}, fp, 0.05);
  REQUIRE(s.plateau_count() == 2);
  std::vector<FTEvent> ev;
  advance_to(s, fp, 0.49, &ev);
  CHECK(s.plateau_count() == 2);
  CHECK(s.seg_value(0, s.time) == doctest::Approx(1.0 - 2.0 * 0.49).epsilon(1e-9));
  advance_to(s, fp, 0.6, &ev);
  bool merged = false;
  for (const auto& e : ev)
    if (e.kind == FTEvent::Kind::Merge) merged = true;
  CHECK(merged);
  CHECK(s.plateau_count() == 0);
  CHECK(s.n_fronts() == 0);
  CHECK(snapshot_to_profile(s).eval_right(0.3) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(front_state_mass(s) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("advancing in two legs reproduces the direct run bit for bit") {
  FluxPair fp = standard_pair();
  Profile p0 = sine_profile();
  FrontState direct = init_fronts(p0, fp, 0.02);
  FrontState split = direct;
  advance_to(direct, fp, 0.3);
  advance_to(split, fp, 0.13);
  advance_to(split, fp, 0.3);
  REQUIRE(direct.n_fronts() == split.n_fronts());
  REQUIRE(direct.n_segments() == split.n_segments());
  for (int i = 0; i < direct.n_fronts(); ++i) {
    CHECK(direct.fronts[std::size_t(i)].x0 == split.fronts[std::size_t(i)].x0);
    CHECK(direct.fronts[std::size_t(i)].speed == split.fronts[std::size_t(i)].speed);
  }
  for (int j = 0; j < direct.n_segments(); ++j) {
    CHECK(direct.segments[std::size_t(j)].v0 == split.segments[std::size_t(j)].v0);
    CHECK(direct.segments[std::size_t(j)].rate == split.segments[std::size_t(j)].rate);
  }
  CHECK(direct.anchor == split.anchor);
}

TEST_CASE("sine trajectory: TV falls, plateaus shrink in number, mass holds") {
  FluxPair fp = standard_pair();
  SemigroupRun run = run_semigroup(sine_profile(), fp, 0.01, 0.4,
                                   {0.1, 0.2, 0.3});
  double prev_tv = run.snapshots.front().tv;
  int prev_pc = run.snapshots.front().state.plateau_count();
  double m0 = run.snapshots.front().mass;
  for (std::size_t i = 1; i < run.snapshots.size(); ++i) {
    const auto& s = run.snapshots[i];
    CHECK(s.tv <= prev_tv + 1e-12);
    CHECK(s.state.plateau_count() <= prev_pc);
    CHECK(std::abs(s.mass - m0) <= 10.0 * 0.01 * s.t + 1e-9);
    prev_tv = s.tv;
    prev_pc = s.state.plateau_count();
  }
  CHECK(run.snapshots.back().tv < run.snapshots.front().tv);
  for (const auto& s : run.snapshots) {
    auto iv = plateau_intervals(s.state);
    if (iv.empty()) continue;
    double wmin = 1e9;
    for (const auto& p : iv) wmin = std::min(wmin, p.b - p.a);
    if (wmin <= 0.0) continue;
    CHECK(theta_discontinuity(s.theta, wmin / 2.0) < 0.6);
  }
}

TEST_CASE("flagship trajectory keeps every front on its jump relation") {
  FluxPair fp = standard_pair();
  SemigroupRun run = run_semigroup(example_profile(1.0 / 200.0), fp, 0.02, 0.3,
                                   {0.1, 0.2});
  for (const auto& snap : run.snapshots) {
    const FrontState& s = snap.state;
    for (int i = 0; i < s.n_fronts(); ++i) {
      double ul = s.front_u_left(i, snap.t);
      double ur = s.front_u_right(i, snap.t);
      const Flux& hfl = branch_flux(fp, branch_for(ul, ur));
      double rh = (hfl(ur) - hfl(ul)) / (ur - ul);
      CHECK(std::abs(rh - s.fronts[std::size_t(i)].speed) < 1e-12);
    }
  }
  // max plateau level decays along the envelope known for these wings:
  // u ln u - u + 1 = t
  const auto& last = run.snapshots.back();
  double level = -10.0;
  for (int j = 0; j < last.state.n_segments(); ++j)
    if (last.state.segments[std::size_t(j)].extremum == 1)
      level = last.state.seg_value(j, last.t);
  double t = last.t;
  double lo = 0.05, hi = 1.0;
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    double val = mid * std::log(mid) - mid + 1.0;
    (val > t ? lo : hi) = mid;
  }
  CHECK(level == doctest::Approx(0.5 * (lo + hi)).epsilon(0.05));
}

TEST_CASE("front tracking contracts the L1 distance up to the quantum") {
  FluxPair fp = standard_pair();
  const double h = 0.02;
  for (int trial = 0; trial < 10; ++trial) {
    Profile u0 = random_pc_profile(4.0);
    Profile v0 = random_pc_profile(4.0);
    double d0 = l1_distance(u0, v0);
    FrontState su = init_fronts(u0, fp, h);
    FrontState sv = init_fronts(v0, fp, h);
    advance_to(su, fp, 0.3);
    advance_to(sv, fp, 0.3);
    double d1 = l1_distance(snapshot_to_profile(su), snapshot_to_profile(sv));
    CHECK(d1 <= d0 + 10.0 * h);
  }
}

TEST_CASE("single-branch embedding keeps the shock and no plateaus") {
  FluxPair fp = standard_pair();
  FrontState s = init_fronts_single_branch(example_profile(1.0 / 200.0), fp, 0.02);
  CHECK(s.plateau_count() == 0);
  advance_to(s, fp, 0.3);
  CHECK(s.plateau_count() == 0);
  int down = 0;
  for (int i = 0; i < s.n_fronts(); ++i) {
    if (s.front_u_right(i, s.time) < s.front_u_left(i, s.time)) {
      ++down;
      CHECK(std::abs(s.front_pos(i, s.time)) < 1e-9);
    }
  }
  CHECK(down == 1);
  Profile p = snapshot_to_profile(s);
  const auto& nd = p.nodes();
  for (std::size_t i = 0; i + 1 < nd.size(); ++i)
    CHECK(nd[i + 1].u_left >= nd[i].u_right - 1e-12);
}

TEST_CASE("event bookkeeping reports monotone TV across the log") {
  FluxPair fp = standard_pair();
  SemigroupRun run = run_semigroup(sine_profile(), fp, 0.02, 0.5, {0.25});
  REQUIRE(!run.events.empty());
  for (const auto& e : run.events) CHECK(e.tv_after <= e.tv_before + 1e-10);
}

TEST_SUITE_END();
