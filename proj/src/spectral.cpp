#include "z2scars/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "z2scars/error.hpp"

namespace z2scars {

namespace {

void check_square(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols) {
    throw Error(ErrorCode::dimension_mismatch, "diagonalize: matrix is not square");
  }
}

void check_info(lapack_int info, const char* routine) {
  if (info != 0) {
    throw Error(ErrorCode::solver_failure,
                std::string(routine) + " failed with info = " + std::to_string(info));
  }
}

template <typename Scalar>
double entropy_impl(const Vector<Scalar>& state, int length) {
  if (length < 2 || length % 2 != 0) {
    throw Error(ErrorCode::invalid_parameters, "entanglement_entropy: L must be even");
  }
  const auto n = static_cast<Eigen::Index>(hilbert_dimension(length));
  if (state.size() != n) {
    throw Error(ErrorCode::dimension_mismatch, "entanglement_entropy: state must have length 2^L");
  }
  const double norm = state.norm();
  if (std::abs(norm - 1.0) > 1e-8) {
    throw Error(ErrorCode::non_normalized_input,
                "entanglement_entropy: state norm " + std::to_string(norm) + " != 1");
  }
  // psi(a + 2^{L/2} b): column-major reshape puts the left half (a) on rows.
  const auto half = static_cast<Eigen::Index>(hilbert_dimension(length / 2));
  const Eigen::Map<const Matrix<Scalar>> psi(state.data(), half, half);
  const Eigen::BDCSVD<Matrix<Scalar>> svd(psi);
  double entropy = 0.0;
  for (const double sv : svd.singularValues()) {
    if (sv < 1e-12) continue;
    const double p = sv * sv;
    entropy -= p * std::log(p);
  }
  return std::max(entropy, 0.0);
}

}  // namespace

template <>
EigenSolution<double> diagonalize(RealMatrix matrix, std::shared_ptr<const SectorBasis> basis) {
  check_square(matrix.rows(), matrix.cols());
  const auto n = static_cast<lapack_int>(matrix.rows());
  RealVector w(matrix.rows());
  if (n > 0) {
    check_info(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, matrix.data(), n, w.data()), "dsyevd");
  }
  return {std::move(w), std::move(matrix), std::move(basis)};
}

template <>
EigenSolution<Complex> diagonalize(ComplexMatrix matrix, std::shared_ptr<const SectorBasis> basis) {
  check_square(matrix.rows(), matrix.cols());
  const auto n = static_cast<lapack_int>(matrix.rows());
  RealVector w(matrix.rows());
  if (n > 0) {
    check_info(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                              reinterpret_cast<lapack_complex_double*>(matrix.data()), n, w.data()),
               "zheevd");
  }
  return {std::move(w), std::move(matrix), std::move(basis)};
}

template <typename Scalar>
EigenSolution<Scalar> diagonalize(const SectorMatrix<Scalar>& matrix) {
  return diagonalize<Scalar>(matrix.entries, matrix.basis);
}

template EigenSolution<double> diagonalize(const SectorMatrix<double>&);
template EigenSolution<Complex> diagonalize(const SectorMatrix<Complex>&);

RealVector eigenvalues(RealMatrix matrix) {
  check_square(matrix.rows(), matrix.cols());
  const auto n = static_cast<lapack_int>(matrix.rows());
  RealVector w(matrix.rows());
  if (n > 0) {
    check_info(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, matrix.data(), n, w.data()), "dsyevd");
  }
  return w;
}

double gap_ratio(std::span<const double> ascending, double trim_fraction) {
  if (!(trim_fraction >= 0.0 && trim_fraction < 0.5)) {
    throw Error(ErrorCode::invalid_parameters, "gap_ratio: trim_fraction must lie in [0, 0.5)");
  }
  const std::size_t n = ascending.size();
  const auto cut = static_cast<std::size_t>(std::floor(trim_fraction * static_cast<double>(n)));
  if (n < 2 * cut + 3) {
    throw Error(ErrorCode::too_few_levels,
                "gap_ratio: need at least 3 levels after trimming, have " +
                    std::to_string(n > 2 * cut ? n - 2 * cut : 0));
  }
  const auto kept = ascending.subspan(cut, n - 2 * cut);
  const double bandwidth = ascending.back() - ascending.front();
  const double degenerate = 1e-12 * std::max(bandwidth, 1e-300);

  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + 2 < kept.size(); ++i) {
    const double a = kept[i + 1] - kept[i];
    const double b = kept[i + 2] - kept[i + 1];
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    sum += (lo <= degenerate || hi <= degenerate) ? 0.0 : lo / hi;
    ++count;
  }
  return sum / static_cast<double>(count);
}

double entanglement_entropy(const RealVector& state, int length) {
  return entropy_impl(state, length);
}

double entanglement_entropy(const ComplexVector& state, int length) {
  return entropy_impl(state, length);
}

double s_rmt(int length) {
  if (length < 2 || length % 2 != 0) {
    throw Error(ErrorCode::invalid_parameters, "s_rmt: L must be even");
  }
  return 0.5 * length * std::numbers::ln2 + (0.5 + std::log(0.5)) / 2.0 - 0.5;
}

}  // namespace z2scars
