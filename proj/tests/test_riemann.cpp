#include <doctest.h>

#include <cmath>

#include "gradflux/riemann.hpp"
#include "oracles.hpp"

using namespace gradflux;

TEST_SUITE_BEGIN("riemann");

namespace {
FluxPair standard_pair() {
  return make_flux_pair("burgers", "burgers_plus_1", -3.0, 3.0, 1000);
}
}  // namespace

TEST_CASE("jump speeds from the two-branch relation") {
  FluxPair fp = standard_pair();
  CHECK(rh_speed(1.0, -1.0, fp) == doctest::Approx(0.0));   // downward, g
  CHECK(rh_speed(-1.0, 1.0, fp) == doctest::Approx(0.0));   // upward, f
  CHECK(rh_speed(0.0, -1.0, fp) == doctest::Approx(-0.5));  // (1.5-1)/(-1)
  CHECK_THROWS_AS(rh_speed(0.7, 0.7, fp), EqualStates);
}

TEST_CASE("jump speed is invariant under swapping states with branches") {
  FluxPair fp = make_flux_pair("poly:0,0.4,0.5", "poly:1,0.4,0.5,0.05", -2.0, 2.0);
  FluxPair swapped{fp.g, fp.f, fp.u_lo, fp.u_hi, fp.c0};
  for (int i = 0; i < 100; ++i) {
    double a = oracle::uniform(-2.0, 2.0);
    double b = oracle::uniform(-2.0, 2.0);
    if (a == b) continue;
    CHECK(rh_speed(a, b, fp) == doctest::Approx(rh_speed(b, a, swapped)).epsilon(1e-14));
  }
}

TEST_CASE("chord-slope admissibility on the standard pair") {
  Flux f = parse_flux_spec("burgers");
  Flux g = parse_flux_spec("burgers_plus_1");
  CHECK(liu_admissible(1.0, -1.0, g));       // admissible downward shock
  CHECK_FALSE(liu_admissible(-1.0, 1.0, f)); // upward jump must rarefy
  Flux gneg = parse_flux_spec("poly:0,0,-0.5");
  CHECK_FALSE(liu_admissible(1.0, -1.0, gneg));  // concave: downward inadmissible
  CHECK_THROWS_AS(liu_admissible(0.0, 0.0, f), EqualStates);
}

TEST_CASE("admissibility scan agrees with the dense oracle on random cubics") {
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    double c0 = oracle::uniform(-1, 1), c1 = oracle::uniform(-2, 2);
    double c2 = oracle::uniform(-2, 2), c3 = oracle::uniform(-2, 2);
    Flux flux = parse_flux_spec("poly:" + std::to_string(c0) + "," +
                                std::to_string(c1) + "," + std::to_string(c2) +
                                "," + std::to_string(c3));
    double um = oracle::uniform(-2, 2), up = oracle::uniform(-2, 2);
    if (std::abs(um - up) < 1e-3) continue;
    bool fast = liu_admissible(um, up, flux, 1000);
    bool ref = oracle::liu_scan(
        um, up, [&](double u) { return flux(u); }, 100000);
    CHECK(fast == ref);
    ++checked;
  }
  CHECK(checked > 150);
}

TEST_CASE("downward jump resolves to the stationary g-shock") {
  FluxPair fp = standard_pair();
  WaveFan fan = solve_riemann(1.0, -1.0, fp, 0.1);
  REQUIRE(fan.waves.size() == 1);
  CHECK(fan.flux_used == Branch::G);
  CHECK(fan.waves[0].kind == WaveKind::Shock);
  CHECK(fan.waves[0].speed == doctest::Approx(0.0));
  CHECK(fan.waves[0].u_before == 1.0);
  CHECK(fan.waves[0].u_after == -1.0);
}

TEST_CASE("upward jump under a convex flux becomes a 20-step fan") {
  FluxPair fp = standard_pair();
  WaveFan fan = solve_riemann(-1.0, 1.0, fp, 0.1);
  CHECK(fan.flux_used == Branch::F);
  REQUIRE(fan.waves.size() == 20);
  double prev = -2.0;
  double state = -1.0;
  for (const auto& w : fan.waves) {
    CHECK(w.kind == WaveKind::RarefactionStep);
    CHECK(w.u_before == doctest::Approx(state).epsilon(1e-12));
    state = w.u_after;
    CHECK(w.speed >= prev);
    CHECK(w.speed >= -1.0 - 1e-12);
    CHECK(w.speed <= 1.0 + 1e-12);
    prev = w.speed;
  }
  CHECK(state == doctest::Approx(1.0));
}

TEST_CASE("nonconvex flux yields the composite shock + rarefaction fan") {
  Flux f = parse_flux_spec("poly:0,0,-0.5,0,0.25");  // u^4/4 - u^2/2
  Flux g = parse_flux_spec("poly:1,0,-0.5,0,0.25");
  FluxPair fp{f, g, -2.0, 2.0, 1.0};
  WaveFan fan = solve_riemann(0.0, 1.0, fp, 0.05);
  REQUIRE(fan.waves.size() >= 2);
  // leading shock from 0 to the tangency state sqrt(2/3)
  const double ustar = std::sqrt(2.0 / 3.0);
  CHECK(fan.waves[0].kind == WaveKind::Shock);
  CHECK(fan.waves[0].u_before == doctest::Approx(0.0));
  CHECK(fan.waves[0].u_after == doctest::Approx(ustar).epsilon(1e-3));
  // rarefaction steps cover [ustar, 1]
  double state = fan.waves[0].u_after;
  double prev = fan.waves[0].speed;
  for (std::size_t i = 1; i < fan.waves.size(); ++i) {
    CHECK(fan.waves[i].kind == WaveKind::RarefactionStep);
    CHECK(fan.waves[i].u_before == doctest::Approx(state).epsilon(1e-12));
    CHECK(std::abs(fan.waves[i].u_after - fan.waves[i].u_before) <= 0.05 + 1e-12);
    state = fan.waves[i].u_after;
    CHECK(fan.waves[i].speed >= prev - 1e-9);
    prev = fan.waves[i].speed;
  }
  CHECK(state == doctest::Approx(1.0));
  // compare against the hull oracle along the whole fan interval
  auto hull = oracle::HullEnvelope::build(
      [](double u) { return 0.25 * u * u * u * u - 0.5 * u * u; }, 0.0, 1.0,
      true);
  Envelope env = flux_envelope(f, 0.0, 1.0, EnvelopeKind::LowerConvex, 1e-9);
  for (int i = 0; i <= 100; ++i) {
    double u = double(i) / 100.0;
    CHECK(env.value(u) == doctest::Approx(hull.value(u)).epsilon(1e-5));
  }
}

TEST_CASE("fan structure holds for random states and cubic fluxes") {
  for (int trial = 0; trial < 200; ++trial) {
    double c2 = oracle::uniform(-1, 1), c3 = oracle::uniform(-0.6, 0.6);
    Flux f = parse_flux_spec("poly:0,0," + std::to_string(c2) + "," +
                             std::to_string(c3));
    Flux g = parse_flux_spec("poly:1,0," + std::to_string(c2) + "," +
                             std::to_string(c3));
    FluxPair fp{f, g, -2.0, 2.0, 1.0};
    double a = oracle::uniform(-1.5, 1.5), b = oracle::uniform(-1.5, 1.5);
    if (std::abs(a - b) < 1e-6) continue;
    WaveFan fan = solve_riemann(a, b, fp, 0.1);
    const Flux& h = branch_flux(fp, fan.flux_used);
    double state = a;
    double prev = -1e30;
    for (const auto& w : fan.waves) {
      CHECK(w.u_before == doctest::Approx(state).epsilon(1e-10));
      state = w.u_after;
      CHECK(w.speed >= prev - 1e-9);
      prev = w.speed;
      if (w.kind == WaveKind::Shock)
        CHECK(liu_admissible(w.u_before, w.u_after, h, 2000, 1e-7));
    }
    CHECK(state == doctest::Approx(b).epsilon(1e-10));
  }
}

TEST_SUITE_END();
