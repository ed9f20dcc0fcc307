#pragma once

#include <memory>
#include <span>

#include "z2scars/basis.hpp"
#include "z2scars/types.hpp"

namespace z2scars {

/// Couplings of the mixed-field Ising chain
///   H = sum_i (mu/2) Z_i Z_{i+1} - t X_i - h Z_i     (periodic)
/// in units where mu is kept explicit (mu = 1 everywhere by default).
struct ModelParams {
  double t = 0.0;
  double h = 0.0;
  double mu = 1.0;

  /// Throws invalid_parameters unless mu > 0 and t, h >= 0 are finite.
  void validate() const;
};

/// Which Hamiltonian to assemble.
///  ising:     the chain above
///  effective: leading-order rotated model with dimer-conserving spin flips,
///             sum_i (mu/2) Z_i Z_{i+1} - h Z_i - (t/2)(X_i - Z_{i-1} X_i Z_{i+1})
///  dimer:     D = sum_i Z_i Z_{i+1}
enum class Model { ising, effective, dimer };

/// Dense block of an operator in a symmetry sector.
template <typename Scalar>
struct SectorMatrix {
  std::shared_ptr<const SectorBasis> basis;
  Matrix<Scalar> entries;
};

using RealSectorMatrix = SectorMatrix<double>;
using ComplexSectorMatrix = SectorMatrix<Complex>;

/// Generic block assembly. Real scalars require a real sector (k = 0, L/2).
template <typename Scalar>
SectorMatrix<Scalar> build_block(Model model, const ModelParams& params,
                                 std::shared_ptr<const SectorBasis> basis);

template <typename Scalar = double>
SectorMatrix<Scalar> build_ising(const ModelParams& params,
                                 std::shared_ptr<const SectorBasis> basis) {
  return build_block<Scalar>(Model::ising, params, std::move(basis));
}

template <typename Scalar = double>
SectorMatrix<Scalar> build_effective(const ModelParams& params,
                                     std::shared_ptr<const SectorBasis> basis) {
  return build_block<Scalar>(Model::effective, params, std::move(basis));
}

/// D = sum_i z_i z_{i+1} of a configuration, in {-L, -L+2, ..., L}.
int dimer_count(SpinConfig s, int length);

/// Diagonal energy (mu/2) sum z_i z_{i+1} - h sum z_i.
double classical_energy(const ModelParams& params, SpinConfig s, int length);

/// Matrix-free y = H x on the full 2^L space.
void apply_full(Model model, const ModelParams& params, int length,
                std::span<const double> x, std::span<double> y);

/// Dense 2^L x 2^L matrix (L <= 12).
RealMatrix build_full(Model model, const ModelParams& params, int length);

/// Real antisymmetric Schrieffer-Wolff generator on the full space (L <= 12):
///   S = (t / 2mu) sum_j [P+_{j-1} A_j P+_{j+1} - P-_{j-1} A_j P-_{j+1}],
/// with A = -iY (Z=+1 -> Z=-1, Z=-1 -> -(Z=+1)) and P+- = (1 +- Z)/2.
RealMatrix build_sw_generator(const ModelParams& params, int length);

/// Leading-order rotated Hamiltonian: the dimer-block-diagonal part of
/// H + [S, H]. Agrees with the effective model up to O(t^2).
RealMatrix sw_first_order(const ModelParams& params, int length);

/// Zeroes every element connecting configurations with different D.
RealMatrix dimer_block_part(const RealMatrix& op, int length);

}  // namespace z2scars
