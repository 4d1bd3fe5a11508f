// gradflux: solvers and diagnostics for scalar conservation laws whose flux
// switches between f(u) and g(u) with the sign of u_x.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gradflux/io.hpp"
#include "gradflux/riemann.hpp"
#include "gradflux/runner.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_override,
            int jobs) {
  std::ifstream f(config_path);
  if (!f) {
    std::cerr << "cannot read config file '" << config_path << "'\n";
    return 2;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  gradflux::RunConfig cfg = gradflux::parse_config(ss.str());
  if (!out_override.empty()) cfg.out = out_override;
  return gradflux::run_scenario(cfg, jobs);
}

int cmd_riemann(double ul, double ur, const std::string& flux_spec,
                double step) {
  // poly specs contain commas themselves; take the first split where both
  // halves parse
  gradflux::FluxPair fp;
  bool parsed = false;
  for (auto comma = flux_spec.find(','); comma != std::string::npos;
       comma = flux_spec.find(',', comma + 1)) {
    try {
      fp = gradflux::make_flux_pair(flux_spec.substr(0, comma),
                                    flux_spec.substr(comma + 1), -4.0, 4.0);
      parsed = true;
      break;
    } catch (const gradflux::ParseError&) {
    }
  }
  if (!parsed) {
    std::cerr << "--flux expects 'f_spec,g_spec' with a valid gap\n";
    return 2;
  }
  gradflux::WaveFan fan = gradflux::solve_riemann(ul, ur, fp, step);
  std::cout << "riemann problem ul=" << ul << " ur=" << ur << " flux "
            << (fan.flux_used == gradflux::Branch::F ? "f" : "g") << "\n";
  std::cout << std::left << std::setw(18) << "speed" << std::setw(18)
            << "u_before" << std::setw(18) << "u_after" << "kind\n";
  for (const auto& w : fan.waves) {
    std::cout << std::left << std::setw(18) << w.speed << std::setw(18)
              << w.u_before << std::setw(18) << w.u_after
              << (w.kind == gradflux::WaveKind::Shock ? "shock"
                                                      : "rarefaction-step")
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solvers for conservation laws with gradient-dependent flux"};
  app.require_subcommand(1);

  std::string config_path, out_dir, run_dir, flux_spec = "burgers,burgers_plus_1";
  int jobs = 1;
  double ul = 1.0, ur = -1.0, step = 0.1;

  auto* run = app.add_subcommand("run", "run a scenario from a config file");
  run->add_option("config", config_path, "key=value config file")->required();
  run->add_option("--jobs", jobs, "parallel workers for sweep scenarios");
  run->add_option("--out", out_dir, "output directory (overrides config)");

  auto* rie = app.add_subcommand("riemann", "solve a two-state problem");
  rie->add_option("--ul", ul, "left state")->required();
  rie->add_option("--ur", ur, "right state")->required();
  rie->add_option("--flux", flux_spec, "f and g specs, comma separated");
  rie->add_option("--step", step, "rarefaction step height");

  auto* chk = app.add_subcommand("check", "re-run diagnostics on a run directory");
  chk->add_option("dir", run_dir, "directory with run_meta.json")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, jobs);
    if (rie->parsed()) return cmd_riemann(ul, ur, flux_spec, step);
    if (chk->parsed()) return gradflux::check_run_dir(run_dir);
  } catch (const gradflux::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
