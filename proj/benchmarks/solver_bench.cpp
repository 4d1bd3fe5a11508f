#include <benchmark/benchmark.h>

#include <cmath>

#include "gradflux/profile.hpp"
#include "gradflux/riemann.hpp"
#include "gradflux/semigroup.hpp"
#include "gradflux/viscous.hpp"

using namespace gradflux;

namespace {

FluxPair standard_pair() {
  return make_flux_pair("burgers", "burgers_plus_1", -3.0, 3.0, 1000);
}

Profile sine_profile() {
  return Profile::sample(
      Domain::periodic(1.0),
      [](double x) { return 0.5 * std::sin(2.0 * M_PI * x); }, 2000);
}

}  // namespace

static void ViscousStep(benchmark::State& state) {
  FluxPair fp = standard_pair();
  ViscousParams p;
  p.epsilon = 1e-3;
  p.delta = 1e-3;
  GridState g = sample_initial(sine_profile(), Domain::periodic(1.0),
                               1.0 / double(state.range(0)));
  for (auto _ : state) {
    g = viscous_step(g, fp, p);
    benchmark::DoNotOptimize(g.u.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(ViscousStep)->Arg(512)->Arg(2048)->Arg(8192);

static void SemigroupSineRun(benchmark::State& state) {
  FluxPair fp = standard_pair();
  Profile p0 = sine_profile();
  double h = 1.0 / double(state.range(0));
  for (auto _ : state) {
    SemigroupRun run = run_semigroup(p0, fp, h, 0.3, {0.3});
    benchmark::DoNotOptimize(run.snapshots.back().tv);
  }
}
BENCHMARK(SemigroupSineRun)->Arg(50)->Arg(100)->Arg(200);

static void RiemannNonconvexFan(benchmark::State& state) {
  Flux f = parse_flux_spec("poly:0,0,-0.5,0,0.25");
  Flux g = parse_flux_spec("poly:1,0,-0.5,0,0.25");
  FluxPair fp{f, g, -2.0, 2.0, 1.0};
  for (auto _ : state) {
    WaveFan fan = solve_riemann(-1.1, 1.2, fp, 0.02);
    benchmark::DoNotOptimize(fan.waves.data());
  }
}
BENCHMARK(RiemannNonconvexFan);

static void L1Distance(benchmark::State& state) {
  Profile a = sine_profile();
  Profile b = Profile::sample(
      Domain::periodic(1.0),
      [](double x) { return 0.4 * std::sin(2.0 * M_PI * x + 0.3); }, 1777);
  for (auto _ : state) {
    benchmark::DoNotOptimize(l1_distance(a, b));
  }
}
BENCHMARK(L1Distance);

BENCHMARK_MAIN();
