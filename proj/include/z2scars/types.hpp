#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace z2scars {

using Complex = std::complex<double>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RealVector = Vector<double>;
using RealMatrix = Matrix<double>;
using ComplexVector = Vector<Complex>;
using ComplexMatrix = Matrix<Complex>;

/// Computational-basis label of a chain: bit i is site i, and
/// Z|0> = -|0>, Z|1> = +|1> on every site, so the tower projectors
/// (1 + (-1)^k Z)/2 select |0> for k = 1 and |1> for k = 2.
using SpinConfig = std::uint32_t;

inline constexpr int kMaxChainLength = 20;

inline constexpr int spin_z(SpinConfig s, int site) {
  return ((s >> site) & 1u) ? 1 : -1;
}

inline constexpr std::size_t hilbert_dimension(int length) {
  return std::size_t{1} << length;
}

}  // namespace z2scars
