#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gradflux/io.hpp"
#include "gradflux/runner.hpp"

using namespace gradflux;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("runner");

namespace {
std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("minimal config picks up the documented defaults") {
  RunConfig cfg = parse_config(
      "scenario=smoke\n"
      "flux_f=burgers\n"
      "flux_g=burgers_plus_1\n"
      "initial=example11\n"
      "t_end=0.5\n");
  CHECK(cfg.dx == doctest::Approx(1.0 / 400.0));
  CHECK(cfg.h == doctest::Approx(0.02));
  CHECK(cfg.epsilon == doctest::Approx(1e-3));
  CHECK(cfg.delta == doctest::Approx(1e-3));
  CHECK(cfg.cfl == doctest::Approx(0.45));
  CHECK(cfg.solver == "semigroup");
  Domain d = config_domain(cfg);
  CHECK(d.x_min == -5.0);
  CHECK(d.x_max == 5.0);
}

TEST_CASE("bad configs name the offending key") {
  CHECK_THROWS_AS(parse_config("scenario=x\ninitial=example11\nt_end=-1\n"),
                  ValidationError);
  try {
    parse_config("scenario=x\ninitial=example11\nt_end=-1\n");
  } catch (const ValidationError& e) {
    CHECK(e.key == "t_end");
  }
  try {
    parse_config("scenario=x\ninitial=example11\nt_end=1\nwibble=3\n");
  } catch (const ValidationError& e) {
    CHECK(e.key == "wibble");
  }
  CHECK_THROWS_AS(parse_config("scenario=x\ninitial=example11\nt_end 1\n"),
                  ParseError);
}

TEST_CASE("serialize and parse round-trip the whole config") {
  RunConfig cfg;
  cfg.scenario = "roundtrip";
  cfg.domain_kind = "bounded";
  cfg.x_min = -1.5;
  cfg.x_max = 2.5;
  cfg.flux_f = "poly:0,0,0.5";
  cfg.flux_g = "poly:1,0,0.5";
  cfg.initial = "riemann:0.8,-0.6";
  cfg.solver = "both";
  cfg.epsilon = 2e-3;
  cfg.delta = 3e-3;
  cfg.dx = 1.0 / 321.0;
  cfg.cfl = 0.41;
  cfg.h = 0.015;
  cfg.t_end = 0.77;
  cfg.snapshots = {0.0, 0.3, 0.77};
  cfg.out = "/tmp/rt";
  RunConfig back = parse_config(serialize_config(cfg));
  CHECK(back.scenario == cfg.scenario);
  CHECK(back.domain_kind == cfg.domain_kind);
  CHECK(back.x_min == cfg.x_min);
  CHECK(back.x_max == cfg.x_max);
  CHECK(back.flux_f == cfg.flux_f);
  CHECK(back.flux_g == cfg.flux_g);
  CHECK(back.initial == cfg.initial);
  CHECK(back.solver == cfg.solver);
  CHECK(back.epsilon == cfg.epsilon);
  CHECK(back.delta == cfg.delta);
  CHECK(back.dx == cfg.dx);
  CHECK(back.cfl == cfg.cfl);
  CHECK(back.h == cfg.h);
  CHECK(back.t_end == cfg.t_end);
  CHECK(back.snapshots == cfg.snapshots);
  CHECK(back.out == cfg.out);
}

TEST_CASE("builtin initial data evaluate to their closed forms") {
  RunConfig cfg;
  cfg.scenario = "x";
  cfg.initial = "example11";
  cfg.t_end = 0.5;
  Profile p = make_initial_profile(cfg);
  CHECK(p.eval_right(-1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-5));
  CHECK(p.eval_left(0.0) == 1.0);
  CHECK(p.eval_right(0.0) == -1.0);
  CHECK(p.eval_right(2.0) == doctest::Approx(-std::exp(-2.0)).epsilon(1e-5));

  cfg.initial = "riemann:1,-1";
  Profile r = make_initial_profile(cfg);
  CHECK(r.eval_left(0.0) == 1.0);
  CHECK(r.eval_right(0.0) == -1.0);

  cfg.initial = "sine:0.5";
  Profile s = make_initial_profile(cfg);
  CHECK(s.eval_right(0.25) == doctest::Approx(0.5).epsilon(1e-9));

  cfg.initial = "pw:0:0,0.5:1,0.5:-1,1:0";
  cfg.domain_kind = "bounded";
  cfg.x_min = 0.0;
  cfg.x_max = 1.0;
  Profile w = make_initial_profile(cfg);
  CHECK(w.eval_left(0.5) == 1.0);
  CHECK(w.eval_right(0.5) == -1.0);
}

TEST_CASE("constant scenario with both solvers agrees with itself") {
  RunConfig cfg;
  cfg.scenario = "const_both";
  cfg.initial = "constant:0.7";
  cfg.solver = "both";
  cfg.t_end = 0.2;
  cfg.dx = 1.0 / 64.0;
  cfg.h = 0.05;
  cfg.out = (fs::temp_directory_path() / "gradflux_test_const").string();
  fs::remove_all(cfg.out);
  CHECK(run_scenario(cfg) == 0);
  std::string pair = slurp(fs::path(cfg.out) / "const_both" / "pairwise_l1.csv");
  std::istringstream is(pair);
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    auto comma = line.find(',');
    double l1 = std::stod(line.substr(comma + 1));
    CHECK(l1 <= 1e-12);
  }
  CHECK(fs::exists(fs::path(cfg.out) / "const_both" / "run_meta.json"));
  CHECK(fs::exists(fs::path(cfg.out) / "const_both" / "diagnostics.json"));
  fs::remove_all(cfg.out);
}

TEST_CASE("scenario output is byte-identical across runs") {
  RunConfig cfg;
  cfg.scenario = "determinism";
  cfg.initial = "sine:0.5";
  cfg.solver = "semigroup";
  cfg.t_end = 0.2;
  cfg.h = 0.02;
  cfg.snapshots = {0.0, 0.1, 0.2};
  std::string out1 = (fs::temp_directory_path() / "gradflux_det1").string();
  std::string out2 = (fs::temp_directory_path() / "gradflux_det2").string();
  fs::remove_all(out1);
  fs::remove_all(out2);
  cfg.out = out1;
  REQUIRE(run_scenario(cfg) == 0);
  cfg.out = out2;
  REQUIRE(run_scenario(cfg) == 0);
  for (const char* name : {"semi_t0.csv", "semi_t0.1.csv", "semi_t0.2.csv",
                           "events.jsonl", "diagnostics.json"}) {
    CAPTURE(name);
    CHECK(slurp(fs::path(out1) / "determinism" / name) ==
          slurp(fs::path(out2) / "determinism" / name));
  }
  fs::remove_all(out1);
  fs::remove_all(out2);
}

TEST_CASE("example discriminator scenario runs end to end") {
  RunConfig cfg;
  cfg.scenario = "example11_discriminator";
  cfg.initial = "example11";
  cfg.t_end = 0.2;
  cfg.h = 0.02;
  cfg.snapshots = {0.0, 0.1, 0.2};
  cfg.out = (fs::temp_directory_path() / "gradflux_test_disc").string();
  fs::remove_all(cfg.out);
  CHECK(run_scenario(cfg) == 0);
  fs::path dir = fs::path(cfg.out) / cfg.scenario;
  CHECK(fs::exists(dir / "semi_t0.2.csv"));
  CHECK(fs::exists(dir / "burgers_t0.2.csv"));
  CHECK(fs::exists(dir / "pairwise_l1.csv"));
  // stored artifacts re-check clean
  CHECK(check_run_dir(dir.string()) == 0);
  fs::remove_all(cfg.out);
}

TEST_CASE("embedded solution: persistent jump, increasing wings, theta atom") {
  RunConfig cfg;
  cfg.scenario = "ctrl";
  cfg.initial = "example11";
  cfg.t_end = 0.4;
  cfg.h = 0.02;
  cfg.snapshots = {0.0, 0.2, 0.4};
  Trajectory ctrl = burgers_embedded_solution(cfg);
  for (const auto& s : ctrl.snaps) {
    // one downward jump at the origin
    int down = 0;
    for (const auto& n : s.u.nodes())
      if (n.u_right < n.u_left) {
        ++down;
        CHECK(std::abs(n.x) < 1e-9);
      }
    CHECK(down == 1);
    // strictly increasing elsewhere
    const auto& nd = s.u.nodes();
    for (std::size_t i = 0; i + 1 < nd.size(); ++i)
      CHECK(nd[i + 1].u_left >= nd[i].u_right - 1e-12);
    // unit switch jump at the shock
    CHECK(theta_discontinuity(s.theta, 0.05) == doctest::Approx(1.0));
  }
}

TEST_CASE("embedded solution rejects unsuitable data") {
  RunConfig cfg;
  cfg.scenario = "bad";
  cfg.initial = "sine:0.5";
  cfg.t_end = 0.1;
  CHECK_THROWS_AS(burgers_embedded_solution(cfg), PreconditionViolation);
}

TEST_SUITE_END();
