#pragma once

#include <string>
#include <vector>

#include "gradflux/diagnostics.hpp"
#include "gradflux/flux.hpp"
#include "gradflux/profile.hpp"
#include "gradflux/trajectory.hpp"

namespace gradflux {

/// Flat key=value scenario configuration.
struct RunConfig {
  std::string scenario;
  std::string domain_kind;  // "periodic" | "bounded" | "" (from the initial datum)
  double x_min = 0.0, x_max = 0.0, period = 0.0;
  std::string flux_f = "burgers";
  std::string flux_g = "burgers_plus_1";
  std::string initial;
  std::string solver = "semigroup";  // viscous | semigroup | both
  double epsilon = 1e-3;
  double delta = 1e-3;
  double dx = 1.0 / 400.0;
  double cfl = 0.45;
  double h = 0.02;
  double t_end = 0.0;
  std::vector<double> snapshots;  // empty: five uniform intervals
  std::string out;
};

/// Parses the key=value line format (with # comments).  ParseError carries
/// the line number; ValidationError names the offending key.
RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& cfg);

/// Resolved spatial domain of a config (explicit keys win, otherwise the
/// builtin initial datum's natural domain).
Domain config_domain(const RunConfig& cfg);
FluxPair config_flux_pair(const RunConfig& cfg);
std::vector<double> config_snapshots(const RunConfig& cfg);

/// Builds the initial datum.  Builtins: `example11` (exponential pair with
/// the downward jump at the origin), `riemann:ul,ur[,x0]`, `sine:amp[,k]`,
/// `constant:c`, and `pw:x0:u0,x1:u1,...` tables (repeat an x to place a
/// jump).
Profile make_initial_profile(const RunConfig& cfg);

/// The admissible non-semigroup weak solution for Example-1.1-type data:
/// both monotone sides evolve under f alone while the downward jump at the
/// origin persists as a g-shock.  Its theta field keeps a unit jump at the
/// shock for every t.
Trajectory burgers_embedded_solution(const RunConfig& cfg);

/// Runs the configured scenario, writing snapshot CSVs, the event log,
/// diagnostics JSON and a text summary below the output directory.  Returns
/// the process exit status (0 on success).
int run_scenario(const RunConfig& cfg, int jobs = 1);

/// Re-runs the structural diagnostics on stored artifacts.
int check_run_dir(const std::string& dir);

/// The standard scenario suite exercised by the structural acceptance
/// checks.
std::vector<RunConfig> standard_scenarios();

}  // namespace gradflux
