#pragma once

#include "z2scars/types.hpp"

namespace z2scars {

/// Scar tower label. tower = 1: magnons over |0...0>; tower = 2: antimagnons
/// over |1...1>. n is the (even) number of ladder applications.
struct ScarLabel {
  int tower = 1;
  int n = 0;

  bool operator==(const ScarLabel&) const = default;
};

/// Largest n for which the tower state is nonzero: L/2 isolated excitations.
inline constexpr int max_excitations(int length) { return length / 2; }

/// Polarized vacuum of the tower: |0...0> (tower 1) or |1...1> (tower 2).
RealVector build_vacuum(int tower, int length);

/// Applies the tower raising operator
///   Q^dag = sum_i (-1)^i P_{i-1} sigma_i P_{i+1},
/// where P projects a site onto the vacuum spin and sigma_i flips site i out
/// of the vacuum spin with amplitude 2 (X + iY for tower 1, X - iY for tower 2,
/// given Z|1> = +|1>).
/// The staggering origin is site 0; moving it flips the sign of Q^dag, which
/// leaves every even-n state unchanged.
RealVector apply_ladder(int tower, const RealVector& state, int length);

struct ScarState {
  RealVector state;         // unit norm, full basis
  double norm_constant = 0; // squared norm of (Q^dag)^n |vacuum> / n!
};

/// Normalized tower state. Throws vanishing_state when n exceeds the tower
/// and invalid_parameters for odd n or an unknown tower.
ScarState scar_state(const ScarLabel& label, int length);

/// Tower energy under the effective model: the vacuum energy plus n times the
/// classical cost of one isolated excitation.
double tower_energy(const ScarLabel& label, int length, double h, double mu = 1.0);

}  // namespace z2scars
