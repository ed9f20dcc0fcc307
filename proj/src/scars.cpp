#include "z2scars/scars.hpp"

#include <cmath>
#include <string>

#include "z2scars/error.hpp"

namespace z2scars {

namespace {

void check_tower(int tower) {
  if (tower != 1 && tower != 2) {
    throw Error(ErrorCode::invalid_parameters, "tower index must be 1 or 2, got " + std::to_string(tower));
  }
}

void check_length(int length) {
  if (length < 4 || length % 2 != 0 || length > kMaxChainLength) {
    throw Error(ErrorCode::invalid_parameters,
                "scar towers need an even chain length in [4, " + std::to_string(kMaxChainLength) + "]");
  }
}

}  // namespace

RealVector build_vacuum(int tower, int length) {
  check_tower(tower);
  check_length(length);
  const std::size_t n = hilbert_dimension(length);
  RealVector v = RealVector::Zero(static_cast<Eigen::Index>(n));
  v[static_cast<Eigen::Index>(tower == 1 ? 0 : n - 1)] = 1.0;
  return v;
}

RealVector apply_ladder(int tower, const RealVector& state, int length) {
  check_tower(tower);
  check_length(length);
  const std::size_t n = hilbert_dimension(length);
  if (static_cast<std::size_t>(state.size()) != n) {
    throw Error(ErrorCode::dimension_mismatch, "apply_ladder: state must have length 2^L");
  }
  // bit value of a vacuum site
  const SpinConfig vacuum_bit = tower == 1 ? 0u : 1u;
  RealVector out = RealVector::Zero(state.size());
  for (std::size_t s = 0; s < n; ++s) {
    const double amp = state[static_cast<Eigen::Index>(s)];
    if (amp == 0.0) continue;
    const auto cfg = static_cast<SpinConfig>(s);
    for (int i = 0; i < length; ++i) {
      const SpinConfig left = (cfg >> ((i + length - 1) % length)) & 1u;
      const SpinConfig right = (cfg >> ((i + 1) % length)) & 1u;
      const SpinConfig here = (cfg >> i) & 1u;
      if (left != vacuum_bit || right != vacuum_bit || here != vacuum_bit) continue;
      const double stagger = (i % 2 == 0) ? 1.0 : -1.0;
      out[static_cast<Eigen::Index>(cfg ^ (SpinConfig{1} << i))] += 2.0 * stagger * amp;
    }
  }
  return out;
}

ScarState scar_state(const ScarLabel& label, int length) {
  check_tower(label.tower);
  check_length(length);
  if (label.n < 0 || label.n % 2 != 0) {
    throw Error(ErrorCode::invalid_parameters,
                "scar excitation number must be even and non-negative, got " + std::to_string(label.n));
  }
  RealVector v = build_vacuum(label.tower, length);
  for (int m = 1; m <= label.n; ++m) {
    // dividing by m at each step accumulates the 1/n! prefactor
    v = apply_ladder(label.tower, v, length) / static_cast<double>(m);
  }
  const double norm2 = v.squaredNorm();
  if (norm2 < 1e-20) {
    throw Error(ErrorCode::vanishing_state,
                "tower " + std::to_string(label.tower) + " has no state with n = " +
                    std::to_string(label.n) + " at L = " + std::to_string(length));
  }
  return {v / std::sqrt(norm2), norm2};
}

double tower_energy(const ScarLabel& label, int length, double h, double mu) {
  // vacuum: all bonds satisfied, every site against (tower 1) or along
  // (tower 2) the longitudinal field; one isolated flip breaks two bonds
  const double vacuum = 0.5 * mu * length + (label.tower == 1 ? h : -h) * length;
  const double per_flip = -2.0 * mu + (label.tower == 1 ? -2.0 * h : 2.0 * h);
  return vacuum + label.n * per_flip;
}

}  // namespace z2scars
