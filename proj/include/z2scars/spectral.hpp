#pragma once

#include <memory>
#include <span>

#include "z2scars/hamiltonian.hpp"
#include "z2scars/types.hpp"

namespace z2scars {

/// Ascending eigenvalues and orthonormal eigenvectors (columns, sector basis).
template <typename Scalar>
struct EigenSolution {
  RealVector energies;
  Matrix<Scalar> vectors;
  std::shared_ptr<const SectorBasis> basis;

  std::size_t size() const { return static_cast<std::size_t>(energies.size()); }
};

using RealEigenSolution = EigenSolution<double>;

/// Full dense diagonalization (LAPACK divide and conquer). Throws
/// solver_failure when LAPACK reports non-convergence.
template <typename Scalar>
EigenSolution<Scalar> diagonalize(const SectorMatrix<Scalar>& matrix);

/// Raw-matrix variant; `basis` may be null.
template <typename Scalar>
EigenSolution<Scalar> diagonalize(Matrix<Scalar> matrix, std::shared_ptr<const SectorBasis> basis = nullptr);

/// Eigenvalues only.
RealVector eigenvalues(RealMatrix matrix);

inline constexpr double kDefaultTrimFraction = 0.1;

/// Mean adjacent gap ratio over the levels left after dropping
/// `trim_fraction` of the spectrum at each edge. Gaps below
/// 1e-12 * bandwidth count as degenerate and give r = 0.
double gap_ratio(std::span<const double> ascending, double trim_fraction = kDefaultTrimFraction);

/// Half-chain von Neumann entropy of a normalized full-basis state. The left
/// half is sites 0 .. L/2-1. Throws non_normalized_input if |norm - 1| > 1e-8.
double entanglement_entropy(const RealVector& state, int length);
double entanglement_entropy(const ComplexVector& state, int length);

/// Random-matrix value of the half-chain entropy:
///   (L/2) ln 2 + (1/2 + ln(1/2))/2 - 1/2
double s_rmt(int length);

/// Reference gap ratios.
inline constexpr double kGoeGapRatio = 0.531;
inline constexpr double kPoissonGapRatio = 0.386;

}  // namespace z2scars
