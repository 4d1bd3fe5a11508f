#include "gradflux/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gradflux/io.hpp"
#include "gradflux/semigroup.hpp"
#include "gradflux/viscous.hpp"

namespace gradflux {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool parse_num(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& s, const std::string& key) {
  std::vector<double> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    double v;
    if (!parse_num(trim(tok), v))
      throw ValidationError(key, "bad number '" + tok + "' in " + key);
    out.push_back(v);
  }
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool have_tend = false;
  while (std::getline(is, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    auto num = [&](double& slot) {
      if (!parse_num(val, slot))
        throw ValidationError(key, "value of '" + key + "' is not a number");
    };
    if (key == "scenario") cfg.scenario = val;
    else if (key == "domain") cfg.domain_kind = val;
    else if (key == "x_min") num(cfg.x_min);
    else if (key == "x_max") num(cfg.x_max);
    else if (key == "period") num(cfg.period);
    else if (key == "flux_f") cfg.flux_f = val;
    else if (key == "flux_g") cfg.flux_g = val;
    else if (key == "initial") cfg.initial = val;
    else if (key == "solver") cfg.solver = val;
    else if (key == "epsilon") num(cfg.epsilon);
    else if (key == "delta") num(cfg.delta);
    else if (key == "dx") num(cfg.dx);
    else if (key == "cfl") num(cfg.cfl);
    else if (key == "h") num(cfg.h);
    else if (key == "t_end") { num(cfg.t_end); have_tend = true; }
    else if (key == "snapshots") cfg.snapshots = parse_list(val, key);
    else if (key == "out") cfg.out = val;
    else throw ValidationError(key, "unknown config key '" + key + "'");
  }
  if (cfg.scenario.empty())
    throw ValidationError("scenario", "config needs a scenario name");
  if (cfg.initial.empty())
    throw ValidationError("initial", "config needs an initial datum");
  if (!have_tend || !(cfg.t_end > 0.0))
    throw ValidationError("t_end", "t_end must be given and positive");
  if (!(cfg.epsilon > 0.0)) throw ValidationError("epsilon", "epsilon must be positive");
  if (!(cfg.delta > 0.0)) throw ValidationError("delta", "delta must be positive");
  if (!(cfg.dx > 0.0)) throw ValidationError("dx", "dx must be positive");
  if (!(cfg.h > 0.0)) throw ValidationError("h", "h must be positive");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 0.9))
    throw ValidationError("cfl", "cfl must lie in (0, 0.9]");
  if (cfg.solver != "viscous" && cfg.solver != "semigroup" && cfg.solver != "both")
    throw ValidationError("solver", "solver must be viscous, semigroup or both");
  if (!cfg.domain_kind.empty() && cfg.domain_kind != "periodic" &&
      cfg.domain_kind != "bounded")
    throw ValidationError("domain", "domain must be periodic or bounded");
  for (double t : cfg.snapshots)
    if (t < 0.0 || t > cfg.t_end)
      throw ValidationError("snapshots", "snapshot times must lie in [0, t_end]");
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "scenario=" << cfg.scenario << '\n';
  if (!cfg.domain_kind.empty()) {
    os << "domain=" << cfg.domain_kind << '\n';
    if (cfg.domain_kind == "periodic")
      os << "period=" << format_double(cfg.period) << '\n';
    else
      os << "x_min=" << format_double(cfg.x_min) << '\n'
         << "x_max=" << format_double(cfg.x_max) << '\n';
  }
  os << "flux_f=" << cfg.flux_f << '\n';
  os << "flux_g=" << cfg.flux_g << '\n';
  os << "initial=" << cfg.initial << '\n';
  os << "solver=" << cfg.solver << '\n';
  os << "epsilon=" << format_double(cfg.epsilon) << '\n';
  os << "delta=" << format_double(cfg.delta) << '\n';
  os << "dx=" << format_double(cfg.dx) << '\n';
  os << "cfl=" << format_double(cfg.cfl) << '\n';
  os << "h=" << format_double(cfg.h) << '\n';
  os << "t_end=" << format_double(cfg.t_end) << '\n';
  if (!cfg.snapshots.empty()) {
    os << "snapshots=";
    for (std::size_t i = 0; i < cfg.snapshots.size(); ++i) {
      if (i) os << ',';
      os << format_double(cfg.snapshots[i]);
    }
    os << '\n';
  }
  if (!cfg.out.empty()) os << "out=" << cfg.out << '\n';
  return os.str();
}

namespace {

struct InitialSpec {
  std::string name;
  std::vector<double> args;
  std::vector<std::pair<double, double>> table;  // for pw:
};

InitialSpec parse_initial(const std::string& s) {
  InitialSpec out;
  auto colon = s.find(':');
  out.name = s.substr(0, colon == std::string::npos ? s.size() : colon);
  if (colon == std::string::npos) return out;
  std::string body = s.substr(colon + 1);
  if (out.name == "pw") {
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      auto c = tok.find(':');
      if (c == std::string::npos)
        throw ValidationError("initial", "pw entries must be x:u pairs");
      double x, u;
      if (!parse_num(trim(tok.substr(0, c)), x) ||
          !parse_num(trim(tok.substr(c + 1)), u))
        throw ValidationError("initial", "bad pw entry '" + tok + "'");
      out.table.push_back({x, u});
    }
    if (out.table.size() < 2)
      throw ValidationError("initial", "pw table needs at least two entries");
    return out;
  }
  std::istringstream is(body);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    double v;
    if (!parse_num(trim(tok), v))
      throw ValidationError("initial", "bad parameter '" + tok + "' in initial");
    out.args.push_back(v);
  }
  return out;
}

}  // namespace

Domain config_domain(const RunConfig& cfg) {
  if (cfg.domain_kind == "periodic") {
    double L = cfg.period > 0.0 ? cfg.period : 1.0;
    return Domain::periodic(L);
  }
  if (cfg.domain_kind == "bounded") {
    if (!(cfg.x_min < cfg.x_max))
      throw ValidationError("x_min", "bounded domain needs x_min < x_max");
    return Domain::bounded(cfg.x_min, cfg.x_max);
  }
  InitialSpec spec = parse_initial(cfg.initial);
  if (spec.name == "example11") return Domain::bounded(-5.0, 5.0);
  if (spec.name == "riemann") return Domain::bounded(-2.0, 2.0);
  if (spec.name == "sine" || spec.name == "constant") return Domain::periodic(1.0);
  if (spec.name == "pw")
    throw ValidationError("domain", "pw initial data needs an explicit domain");
  throw ValidationError("initial", "unknown initial spec '" + cfg.initial + "'");
}

FluxPair config_flux_pair(const RunConfig& cfg) {
  // validated on a range generous enough for all shipped scenarios
  return make_flux_pair(cfg.flux_f, cfg.flux_g, -4.0, 4.0, 4001);
}

std::vector<double> config_snapshots(const RunConfig& cfg) {
  if (!cfg.snapshots.empty()) return cfg.snapshots;
  std::vector<double> out;
  for (int i = 0; i <= 5; ++i) out.push_back(cfg.t_end * double(i) / 5.0);
  return out;
}

Profile make_initial_profile(const RunConfig& cfg) {
  Domain d = config_domain(cfg);
  InitialSpec spec = parse_initial(cfg.initial);
  if (spec.name == "example11") {
    // exponential wings with the admissible downward jump at the origin
    const double dxs = 1.0 / 400.0;
    std::vector<ProfileNode> nodes;
    int nl = int(std::lround(-d.x_min / dxs));
    int nr = int(std::lround(d.x_max / dxs));
    for (int k = -nl; k < 0; ++k) {
      double x = double(k) * dxs;
      nodes.push_back({x, std::exp(x), std::exp(x)});
    }
    nodes.push_back({0.0, 1.0, -1.0});
    for (int k = 1; k <= nr; ++k) {
      double x = double(k) * dxs;
      nodes.push_back({x, -std::exp(-x), -std::exp(-x)});
    }
    return Profile(d, std::move(nodes));
  }
  if (spec.name == "riemann") {
    if (spec.args.size() < 2)
      throw ValidationError("initial", "riemann needs ul,ur");
    double x0 = spec.args.size() > 2 ? spec.args[2] : (d.periodic_kind() ? d.length() / 2 : 0.0);
    return Profile::step(d, spec.args[0], spec.args[1], x0);
  }
  if (spec.name == "sine") {
    double amp = spec.args.empty() ? 0.5 : spec.args[0];
    double k = spec.args.size() > 1 ? spec.args[1] : 1.0;
    double L = d.periodic_kind() ? d.length() : (d.x_max - d.x_min);
    return Profile::sample(
        d, [=](double x) { return amp * std::sin(2.0 * M_PI * k * x / L); },
        2000);
  }
  if (spec.name == "constant") {
    double c = spec.args.empty() ? 0.0 : spec.args[0];
    return Profile::constant(d, c);
  }
  if (spec.name == "pw") {
    std::vector<ProfileNode> nodes;
    const auto& tb = spec.table;
    for (std::size_t i = 0; i < tb.size();) {
      if (i + 1 < tb.size() && tb[i + 1].first == tb[i].first) {
        nodes.push_back({tb[i].first, tb[i].second, tb[i + 1].second});
        i += 2;
      } else {
        nodes.push_back({tb[i].first, tb[i].second, tb[i].second});
        i += 1;
      }
    }
    return Profile(d, std::move(nodes));
  }
  throw ValidationError("initial", "unknown initial spec '" + cfg.initial + "'");
}

Trajectory burgers_embedded_solution(const RunConfig& cfg) {
  Profile p0 = make_initial_profile(cfg);
  const Domain& d = p0.domain();
  // precondition: one downward jump, nondecreasing elsewhere
  int down_jumps = 0;
  for (const auto& n : p0.nodes()) {
    if (n.u_right < n.u_left) ++down_jumps;
  }
  const auto& nd = p0.nodes();
  for (std::size_t i = 0; i + 1 < nd.size(); ++i)
    if (nd[i + 1].u_left < nd[i].u_right - 1e-12)
      throw PreconditionViolation(
          "burgers embedding needs data increasing away from the jump");
  if (down_jumps != 1)
    throw PreconditionViolation(
        "burgers embedding needs exactly one downward jump");

  FluxPair fp = config_flux_pair(cfg);
  FrontState s = init_fronts_single_branch(p0, fp, cfg.h);
  Trajectory traj;
  traj.label = "burgers_embedded";
  for (double t : config_snapshots(cfg)) {
    advance_to(s, fp, t);
    FrontState frozen = s;
    reanchor_snapshot(frozen, fp, t);
    TrajSnapshot snap;
    snap.t = t;
    snap.u = snapshot_to_profile(frozen);
    // theta is 1 away from the persistent g-shock and 0 exactly at it
    ThetaField tf;
    tf.domain = d;
    tf.pieces.push_back({d.x_min, d.x_max, 1.0, 1.0});
    for (int i = 0; i < frozen.n_fronts(); ++i) {
      if (frozen.front_u_right(i, t) < frozen.front_u_left(i, t))
        tf.atoms.push_back({frozen.front_pos(i, t), 0.0});
    }
    snap.theta = std::move(tf);
    snap.mass = front_state_mass(frozen);
    snap.tv = front_state_tv(frozen);
    snap.plateau_count = 0;
    traj.snaps.push_back(std::move(snap));
  }
  return traj;
}

// ---------------------------------------------------------------------------
// scenario execution

namespace {

std::string time_tag(double t) { return format_double(t); }

json domain_json(const Domain& d) {
  json j;
  j["kind"] = d.periodic_kind() ? "periodic" : "bounded";
  j["x_min"] = d.x_min;
  j["x_max"] = d.x_max;
  return j;
}

Domain domain_from_json(const json& j) {
  if (j.at("kind") == "periodic")
    return Domain::periodic(double(j.at("x_max")) - double(j.at("x_min")));
  return Domain::bounded(j.at("x_min"), j.at("x_max"));
}

void write_events_jsonl(const std::string& path,
                        const std::vector<FTEvent>& events) {
  std::ofstream f(path);
  for (const auto& e : events) {
    json j;
    j["t"] = e.t;
    switch (e.kind) {
      case FTEvent::Kind::Collision: j["kind"] = "collision"; break;
      case FTEvent::Kind::Absorption: j["kind"] = "absorption"; break;
      case FTEvent::Kind::Merge: j["kind"] = "merge"; break;
      case FTEvent::Kind::Boundary: j["kind"] = "boundary"; break;
    }
    j["position"] = e.x;
    j["tv_before"] = e.tv_before;
    j["tv_after"] = e.tv_after;
    f << j.dump() << '\n';
  }
}

json report_json(const DiagnosticsReport& r) {
  json j;
  j["scenario"] = r.scenario;
  j["times"] = r.times;
  j["tv"] = r.tv_series;
  j["mass"] = r.mass_series;
  j["plateau_count"] = r.plateau_series;
  j["theta_max_jump"] = r.theta_jump_series;
  j["flags"] = {{"tv_nonincreasing", r.tv_nonincreasing},
                {"plateau_nonincreasing", r.plateau_nonincreasing},
                {"conservation_ok", r.conservation_ok},
                {"theta_continuous", r.theta_continuous}};
  return j;
}

void write_trajectory_csvs(const fs::path& dir, const std::string& prefix,
                           const Trajectory& traj, json& meta) {
  json files = json::array();
  for (const auto& s : traj.snaps) {
    std::string name = prefix + "_t" + time_tag(s.t) + ".csv";
    write_snapshot_csv((dir / name).string(), s.u, s.theta);
    files.push_back({{"t", s.t}, {"file", name}});
  }
  meta["snapshots"][prefix] = files;
}

void summarize(std::ostream& os, const DiagnosticsReport& r) {
  os << "scenario " << r.scenario << "\n";
  os << "  tv nonincreasing: " << (r.tv_nonincreasing ? "yes" : "NO") << "\n";
  os << "  plateau count nonincreasing: "
     << (r.plateau_nonincreasing ? "yes" : "NO") << "\n";
  os << "  conservation: " << (r.conservation_ok ? "ok" : "DRIFT") << "\n";
  os << "  theta continuous: " << (r.theta_continuous ? "yes" : "NO") << "\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    os << "    t=" << r.times[i] << " tv=" << r.tv_series[i]
       << " mass=" << r.mass_series[i];
    if (r.plateau_series[i] >= 0) os << " plateaus=" << r.plateau_series[i];
    if (!r.theta_jump_series.empty())
      os << " theta_jump=" << r.theta_jump_series[i];
    os << "\n";
  }
}

}  // namespace

int run_scenario(const RunConfig& cfg, int jobs) {
  fs::path root;
  if (!cfg.out.empty()) {
    root = cfg.out;
  } else if (const char* env = std::getenv("GRADFLUX_OUT")) {
    root = env;
  } else {
    root = "gradflux_out";
  }
  fs::path dir = root / cfg.scenario;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "cannot create output directory " << dir << "\n";
    return 2;
  }

  try {
    FluxPair fp = config_flux_pair(cfg);
    Profile p0 = make_initial_profile(cfg);
    std::vector<double> snaps = config_snapshots(cfg);

    json meta;
    meta["scenario"] = cfg.scenario;
    meta["solver"] = cfg.solver;
    meta["domain"] = domain_json(p0.domain());
    meta["flux_f"] = cfg.flux_f;
    meta["flux_g"] = cfg.flux_g;
    meta["initial"] = cfg.initial;
    meta["epsilon"] = cfg.epsilon;
    meta["delta"] = cfg.delta;
    meta["dx"] = cfg.dx;
    meta["cfl"] = cfg.cfl;
    meta["h"] = cfg.h;
    meta["t_end"] = cfg.t_end;
    meta["snapshot_times"] = snaps;

    std::ofstream summary((dir / "summary.txt").string());
    json diag = json::object();

    if (cfg.scenario == "example11_discriminator") {
      SemigroupRun semi = run_semigroup(p0, fp, cfg.h, cfg.t_end, snaps);
      Trajectory semi_traj = to_trajectory(semi, "semigroup");
      Trajectory ctrl = burgers_embedded_solution(cfg);
      write_trajectory_csvs(dir, "semi", semi_traj, meta);
      write_trajectory_csvs(dir, "burgers", ctrl, meta);
      write_events_jsonl((dir / "events.jsonl").string(), semi.events);

      DiagnosticsThresholds th;
      th.theta_jump_scale = 0.05;
      th.conservation_per_unit_time = 10.0 * cfg.h;
      DiagnosticsReport rs = structural_checks(semi_traj, th);
      DiagnosticsReport rc = structural_checks(ctrl, th);
      diag["semigroup"] = report_json(rs);
      diag["burgers_embedded"] = report_json(rc);

      json pair = json::array();
      std::ofstream pcsv((dir / "pairwise_l1.csv").string());
      pcsv << "t,l1\n";
      for (std::size_t i = 0; i < semi_traj.snaps.size(); ++i) {
        double dl1 = l1_distance(semi_traj.snaps[i].u, ctrl.snaps[i].u);
        pair.push_back({{"t", semi_traj.snaps[i].t}, {"l1", dl1}});
        pcsv << format_double(semi_traj.snaps[i].t) << ','
             << format_double(dl1) << '\n';
      }
      diag["pairwise_l1"] = pair;
      summarize(summary, rs);
      summarize(summary, rc);
      summary << "discriminator: semigroup theta stays continuous, the"
                 " embedded Burgers solution keeps a unit theta jump\n";
    } else if (cfg.scenario == "viscous_convergence") {
      SemigroupRun semi = run_semigroup(p0, fp, cfg.h, cfg.t_end, snaps);
      Trajectory ref = to_trajectory(semi, "semigroup_ref");
      write_trajectory_csvs(dir, "semi", ref, meta);
      struct Level {
        double eps, del, dx;
        double l1 = 0.0;
      };
      std::vector<Level> levels = {
          {4 * cfg.epsilon, 4 * cfg.delta, 4 * cfg.dx},
          {2 * cfg.epsilon, 2 * cfg.delta, 2 * cfg.dx},
          {cfg.epsilon, cfg.delta, cfg.dx}};
      auto run_level = [&](Level& lv) {
        ViscousParams vp;
        vp.epsilon = lv.eps;
        vp.delta = lv.del;
        vp.cfl = cfg.cfl;
        vp.t_end = cfg.t_end;
        GridRun gr = run_viscous(p0, fp, vp, lv.dx);
        Profile visc = grid_to_profile(gr.snapshots.back().state);
        lv.l1 = l1_distance(visc, ref.snaps.back().u);
      };
      if (jobs > 1) {
        std::vector<std::thread> pool;
        for (auto& lv : levels) pool.emplace_back(run_level, std::ref(lv));
        for (auto& th : pool) th.join();
      } else {
        for (auto& lv : levels) run_level(lv);
      }
      json tab = json::array();
      summary << "viscous convergence toward the front-tracking run\n";
      for (const auto& lv : levels) {
        tab.push_back({{"epsilon", lv.eps}, {"delta", lv.del}, {"dx", lv.dx},
                       {"l1_to_semigroup", lv.l1}});
        summary << "  eps=" << lv.eps << " delta=" << lv.del << " dx=" << lv.dx
                << " l1=" << lv.l1 << "\n";
      }
      diag["levels"] = tab;
    } else {
      // generic scenario
      Trajectory semi_traj, visc_traj;
      if (cfg.solver == "semigroup" || cfg.solver == "both") {
        SemigroupRun semi = run_semigroup(p0, fp, cfg.h, cfg.t_end, snaps);
        semi_traj = to_trajectory(semi, cfg.scenario);
        write_trajectory_csvs(dir, "semi", semi_traj, meta);
        write_events_jsonl((dir / "events.jsonl").string(), semi.events);
        DiagnosticsThresholds th;
        th.conservation_per_unit_time = 10.0 * cfg.h;
        th.theta_jump_scale = 0.05;
        diag["semigroup"] = report_json(structural_checks(semi_traj, th));
        summarize(summary, structural_checks(semi_traj, th));
      }
      if (cfg.solver == "viscous" || cfg.solver == "both") {
        ViscousParams vp;
        vp.epsilon = cfg.epsilon;
        vp.delta = cfg.delta;
        vp.cfl = cfg.cfl;
        vp.t_end = cfg.t_end;
        vp.snapshot_times = snaps;
        GridRun gr = run_viscous(p0, fp, vp, cfg.dx);
        visc_traj = to_trajectory(gr, cfg.scenario + "_viscous");
        write_trajectory_csvs(dir, "visc", visc_traj, meta);
        meta["dt"] = gr.dt_first;
        json masses = json::array();
        for (double m : gr.mass_ledger) masses.push_back(m);
        diag["viscous_mass_ledger"] = masses;
      }
      if (cfg.solver == "both") {
        json pair = json::array();
        std::ofstream pcsv((dir / "pairwise_l1.csv").string());
        pcsv << "t,l1\n";
        for (std::size_t i = 0;
             i < std::min(semi_traj.snaps.size(), visc_traj.snaps.size()); ++i) {
          double dl1 = l1_distance(semi_traj.snaps[i].u, visc_traj.snaps[i].u);
          pair.push_back({{"t", semi_traj.snaps[i].t}, {"l1", dl1}});
          pcsv << format_double(semi_traj.snaps[i].t) << ','
               << format_double(dl1) << '\n';
        }
        diag["pairwise_l1"] = pair;
      }
    }

    {
      std::ofstream mf((dir / "run_meta.json").string());
      mf << meta.dump(2) << '\n';
      std::ofstream df((dir / "diagnostics.json").string());
      df << diag.dump(2) << '\n';
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "scenario '" << cfg.scenario << "' failed: " << e.what() << "\n";
    return 1;
  }
}

int check_run_dir(const std::string& dirstr) {
  fs::path dir = dirstr;
  std::ifstream mf((dir / "run_meta.json").string());
  if (!mf) {
    std::cerr << "no run_meta.json under " << dir << "\n";
    return 2;
  }
  json meta = json::parse(mf);
  Domain d = domain_from_json(meta.at("domain"));
  double h = meta.value("h", 0.02);
  int status = 0;
  for (auto& [prefix, files] : meta.at("snapshots").items()) {
    Trajectory traj;
    traj.label = std::string(meta.at("scenario")) + "/" + prefix;
    for (const auto& f : files) {
      auto [u, theta] = read_snapshot_csv((dir / std::string(f.at("file"))).string(), d);
      TrajSnapshot s;
      s.t = f.at("t");
      s.mass = u.mass();
      s.tv = total_variation(u);
      s.u = std::move(u);
      s.theta = std::move(theta);
      traj.snaps.push_back(std::move(s));
    }
    if (traj.snaps.size() < 2) continue;
    DiagnosticsThresholds th;
    th.conservation_per_unit_time = 10.0 * h;
    th.theta_jump_scale = 0.05;
    th.tv_slack = 1e-9;  // CSV round-trip rounding
    DiagnosticsReport r = structural_checks(traj, th);
    summarize(std::cout, r);
    bool gate = r.tv_nonincreasing && r.conservation_ok;
    if (prefix == "semi" && !r.theta_continuous) gate = false;
    if (prefix == "burgers" && r.theta_continuous) gate = false;  // control must jump
    if (prefix == "visc") gate = r.conservation_ok;  // grid tv/theta not gated
    if (!gate) status = 1;
  }
  return status;
}

std::vector<RunConfig> standard_scenarios() {
  std::vector<RunConfig> out;
  {
    RunConfig c;
    c.scenario = "example11";
    c.initial = "example11";
    c.solver = "semigroup";
    c.h = 0.01;
    c.t_end = 0.5;
    c.snapshots = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    out.push_back(c);
  }
  {
    RunConfig c;
    c.scenario = "riemann_stationary";
    c.initial = "riemann:1,-1";
    c.solver = "semigroup";
    c.h = 0.02;
    c.t_end = 0.5;
    c.snapshots = {0.0, 0.25, 0.5};
    out.push_back(c);
  }
  {
    RunConfig c;
    c.scenario = "sine_periodic";
    c.initial = "sine:0.5";
    c.solver = "semigroup";
    c.h = 0.01;
    c.t_end = 0.4;
    c.snapshots = {0.0, 0.1, 0.2, 0.3, 0.4};
    out.push_back(c);
  }
  {
    RunConfig c;
    c.scenario = "plateau_merge";
    c.domain_kind = "periodic";
    c.period = 1.0;
    c.initial = "pw:0:0.2,0.1:0.2,0.1:1,0.5:1,0.5:-1,0.9:-1,0.9:0.2";
    c.solver = "semigroup";
    c.h = 0.05;
    c.t_end = 0.6;
    c.snapshots = {0.0, 0.2, 0.4, 0.6};
    out.push_back(c);
  }
  return out;
}

}  // namespace gradflux
