#include "gradflux/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace gradflux {

double rh_speed(double u_minus, double u_plus, const FluxPair& fp) {
  if (u_minus == u_plus) throw EqualStates("rh_speed needs distinct states");
  const Flux& h = branch_flux(fp, branch_for(u_minus, u_plus));
  return (h(u_plus) - h(u_minus)) / (u_plus - u_minus);
}

bool liu_admissible(double u_minus, double u_plus, const Flux& flux,
                    int n_scan, double tol) {
  if (u_minus == u_plus) throw EqualStates("liu_admissible needs distinct states");
  if (n_scan < 2) throw ValidationError("n_scan", "require n_scan >= 2");
  const double h_minus = flux(u_minus);
  const double chord = (flux(u_plus) - h_minus) / (u_plus - u_minus);
  for (int k = 1; k <= n_scan; ++k) {
    double u = u_minus + (u_plus - u_minus) * double(k) / double(n_scan);
    double s = (flux(u) - h_minus) / (u - u_minus);
    if (s < chord - tol) return false;
  }
  return true;
}

namespace {

void append_wave(WaveFan& fan, double a, double b, double speed,
                 WaveKind kind) {
  fan.waves.push_back({speed, a, b, kind});
}

// Discretize one contact (rarefaction) stretch of the envelope running from
// state a to state b (any direction) into steps of height <= step.
void append_rarefaction(WaveFan& fan, const Flux& h, double a, double b,
                        double step) {
  int m = std::max(1, int(std::ceil(std::abs(b - a) / step - 1e-12)));
  double prev = a;
  for (int k = 1; k <= m; ++k) {
    double next = (k == m) ? b : a + (b - a) * double(k) / double(m);
    double speed = (h(next) - h(prev)) / (next - prev);
    append_wave(fan, prev, next, speed, WaveKind::RarefactionStep);
    prev = next;
  }
}

}  // namespace

WaveFan solve_riemann(double u_minus, double u_plus, const FluxPair& fp,
                      double rarefaction_step) {
  if (u_minus == u_plus) throw EqualStates("solve_riemann needs distinct states");
  if (!(rarefaction_step > 0.0))
    throw ValidationError("rarefaction_step", "must be positive");

  const Branch br = branch_for(u_minus, u_plus);
  const Flux& h = branch_flux(fp, br);
  const EnvelopeKind ek = (br == Branch::F) ? EnvelopeKind::LowerConvex
                                            : EnvelopeKind::UpperConcave;
  Envelope env = flux_envelope(h, u_minus, u_plus, ek);

  WaveFan fan;
  fan.u_left = u_minus;
  fan.u_right = u_plus;
  fan.flux_used = br;

  const auto& bp = env.breakpoints;
  const std::size_t nseg = env.segment_on_flux.size();
  if (br == Branch::F) {
    // upward: traverse the envelope left to right in u
    for (std::size_t i = 0; i < nseg; ++i) {
      double a = bp[i].first, b = bp[i + 1].first;
      if (env.segment_on_flux[i])
        append_rarefaction(fan, h, a, b, rarefaction_step);
      else
        append_wave(fan, a, b, env.segment_slope(i), WaveKind::Shock);
    }
  } else {
    // downward: traverse from the top state down; concave-envelope slopes
    // then come out nondecreasing
    for (std::size_t i = nseg; i-- > 0;) {
      double a = bp[i + 1].first, b = bp[i].first;
      if (env.segment_on_flux[i])
        append_rarefaction(fan, h, a, b, rarefaction_step);
      else
        append_wave(fan, a, b, env.segment_slope(i), WaveKind::Shock);
    }
  }

  for (std::size_t i = 0; i + 1 < fan.waves.size(); ++i)
    if (fan.waves[i].speed > fan.waves[i + 1].speed + 1e-9)
      throw EnvelopeFailure("wave speeds not ordered in riemann fan");
  for (const auto& w : fan.waves)
    if (w.kind == WaveKind::Shock &&
        !liu_admissible(w.u_before, w.u_after, h, 128, 1e-7))
      throw EnvelopeFailure("inadmissible shock produced by envelope fan");
  return fan;
}

}  // namespace gradflux
