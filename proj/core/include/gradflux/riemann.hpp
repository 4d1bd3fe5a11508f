#pragma once

#include <vector>

#include "gradflux/flux.hpp"

namespace gradflux {

enum class Branch { F, G };
enum class WaveKind { Shock, RarefactionStep };

/// One wave of a Riemann fan: a jump from u_before (left) to u_after
/// (right) travelling at `speed`.
struct Wave {
  double speed;
  double u_before;
  double u_after;
  WaveKind kind;
};

/// Solution of a single-jump problem under the two-flux rule: an ordered
/// fan of waves with nondecreasing speeds chaining u_left to u_right,
/// all evolved under one flux branch.
struct WaveFan {
  double u_left, u_right;
  Branch flux_used;
  std::vector<Wave> waves;
};

/// Branch selected by the sign of the jump: f for upward (u_plus > u_minus),
/// g for downward.
inline Branch branch_for(double u_minus, double u_plus) {
  return u_plus > u_minus ? Branch::F : Branch::G;
}
inline const Flux& branch_flux(const FluxPair& fp, Branch b) {
  return b == Branch::F ? fp.f : fp.g;
}

/// Rankine-Hugoniot speed [h(u+) - h(u-)]/(u+ - u-) with h chosen by the
/// jump direction (f upward, g downward).
double rh_speed(double u_minus, double u_plus, const FluxPair& fp);

/// Chord-slope admissibility scan: true iff
///   (h(u*) - h(u-))/(u* - u-) >= (h(u+) - h(u-))/(u+ - u-)
/// holds (within `tol`) at n_scan intermediate states u*.
bool liu_admissible(double u_minus, double u_plus, const Flux& flux,
                    int n_scan = 1000, double tol = 1e-12);

/// Entropy wave fan for the jump (u_minus -> u_plus): lower-convex envelope
/// of f on upward jumps, upper-concave envelope of g on downward jumps,
/// rarefactions discretized into steps of value-height <= rarefaction_step.
WaveFan solve_riemann(double u_minus, double u_plus, const FluxPair& fp,
                      double rarefaction_step);

}  // namespace gradflux
