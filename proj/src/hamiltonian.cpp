#include "z2scars/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "z2scars/error.hpp"

namespace z2scars {

namespace {

constexpr int kMaxFullLength = 12;

void check_full_length(int length, const char* what) {
  if (length < 2 || length % 2 != 0) {
    throw Error(ErrorCode::invalid_parameters,
                std::string(what) + ": chain length must be even and >= 2");
  }
  if (length > kMaxFullLength) {
    throw Error(ErrorCode::length_too_large,
                std::string(what) + ": full-space object limited to L <= " +
                    std::to_string(kMaxFullLength) + ", got " + std::to_string(length));
  }
}

double diagonal_element(Model model, const ModelParams& p, SpinConfig s, int length) {
  if (model == Model::dimer) return static_cast<double>(dimer_count(s, length));
  return classical_energy(p, s, length);
}

// Calls emit(flipped_config, amplitude) for every nonzero off-diagonal term.
template <typename Emit>
void for_each_flip(Model model, const ModelParams& p, SpinConfig s, int length, Emit&& emit) {
  if (model == Model::dimer || p.t == 0.0) return;
  for (int i = 0; i < length; ++i) {
    const SpinConfig flipped = s ^ (SpinConfig{1} << i);
    if (model == Model::ising) {
      emit(flipped, -p.t);
    } else {
      const int left = spin_z(s, (i + length - 1) % length);
      const int right = spin_z(s, (i + 1) % length);
      // -(t/2)(1 - z_{i-1} z_{i+1}): only flips between anti-aligned neighbours
      if (left != right) emit(flipped, -p.t);
    }
  }
}

}  // namespace

void ModelParams::validate() const {
  if (!std::isfinite(t) || !std::isfinite(h) || !std::isfinite(mu)) {
    throw Error(ErrorCode::invalid_parameters, "couplings must be finite");
  }
  if (mu <= 0.0) throw Error(ErrorCode::invalid_parameters, "mu must be positive");
  if (t < 0.0 || h < 0.0) throw Error(ErrorCode::invalid_parameters, "t and h must be >= 0");
}

int dimer_count(SpinConfig s, int length) {
  int d = 0;
  for (int i = 0; i < length; ++i) d += spin_z(s, i) * spin_z(s, (i + 1) % length);
  return d;
}

double classical_energy(const ModelParams& p, SpinConfig s, int length) {
  int magnetization = 0;
  for (int i = 0; i < length; ++i) magnetization += spin_z(s, i);
  return 0.5 * p.mu * dimer_count(s, length) - p.h * magnetization;
}

template <typename Scalar>
SectorMatrix<Scalar> build_block(Model model, const ModelParams& params,
                                 std::shared_ptr<const SectorBasis> basis) {
  params.validate();
  if constexpr (std::is_same_v<Scalar, double>) {
    if (!basis->is_real()) {
      throw Error(ErrorCode::invalid_sector,
                  "real block requested for complex sector k = " +
                      std::to_string(basis->sector().momentum));
    }
  }
  const int length = basis->length();
  const auto dim = static_cast<Eigen::Index>(basis->dimension());
  const auto reps = basis->representatives();
  const auto norms = basis->norms();
  const bool use_reflection = basis->uses_reflection();

  Matrix<Scalar> m = Matrix<Scalar>::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    const SpinConfig rep = reps[static_cast<std::size_t>(a)];
    m(a, a) += diagonal_element(model, params, rep, length);
    for_each_flip(model, params, rep, length, [&](SpinConfig target, double amp) {
      const OrbitLocation loc = representative(target, length, use_reflection, basis->reflection_kind());
      const auto b = basis->index_of(loc.rep);
      if (!b) return;
      const Complex chi = basis->character(loc.shift, loc.reflected);
      const double ratio = norms[*b] / norms[static_cast<std::size_t>(a)];
      if constexpr (std::is_same_v<Scalar, double>) {
        m(static_cast<Eigen::Index>(*b), a) += amp * chi.real() * ratio;
      } else {
        m(static_cast<Eigen::Index>(*b), a) += amp * chi * ratio;
      }
    });
  }
  return {std::move(basis), std::move(m)};
}

template SectorMatrix<double> build_block<double>(Model, const ModelParams&,
                                                  std::shared_ptr<const SectorBasis>);
template SectorMatrix<Complex> build_block<Complex>(Model, const ModelParams&,
                                                    std::shared_ptr<const SectorBasis>);

void apply_full(Model model, const ModelParams& params, int length,
                std::span<const double> x, std::span<double> y) {
  const std::size_t n = hilbert_dimension(length);
  if (x.size() != n || y.size() != n) {
    throw Error(ErrorCode::dimension_mismatch, "apply_full: vectors must have length 2^L");
  }
  for (std::size_t s = 0; s < n; ++s) {
    const auto cfg = static_cast<SpinConfig>(s);
    double acc = diagonal_element(model, params, cfg, length) * x[s];
    // H is symmetric, so row s collects the same flips that column s emits.
    for_each_flip(model, params, cfg, length, [&](SpinConfig other, double amp) { acc += amp * x[other]; });
    y[s] = acc;
  }
}

RealMatrix build_full(Model model, const ModelParams& params, int length) {
  check_full_length(length, "build_full");
  params.validate();
  const auto n = static_cast<Eigen::Index>(hilbert_dimension(length));
  RealMatrix m = RealMatrix::Zero(n, n);
  for (Eigen::Index s = 0; s < n; ++s) {
    const auto cfg = static_cast<SpinConfig>(s);
    m(s, s) = diagonal_element(model, params, cfg, length);
    for_each_flip(model, params, cfg, length, [&](SpinConfig other, double amp) { m(other, s) += amp; });
  }
  return m;
}

RealMatrix build_sw_generator(const ModelParams& params, int length) {
  check_full_length(length, "build_sw_generator");
  params.validate();
  const auto n = static_cast<Eigen::Index>(hilbert_dimension(length));
  RealMatrix s_gen = RealMatrix::Zero(n, n);
  const double scale = params.t / (2.0 * params.mu);
  if (scale == 0.0) return s_gen;
  for (Eigen::Index col = 0; col < n; ++col) {
    const auto cfg = static_cast<SpinConfig>(col);
    for (int j = 0; j < length; ++j) {
      const int left = spin_z(cfg, (j + length - 1) % length);
      const int right = spin_z(cfg, (j + 1) % length);
      if (left != right) continue;
      // A flips site j; the product of both signs is invariant under a global flip
      const double a_elem = spin_z(cfg, j) > 0 ? 1.0 : -1.0;
      const double sign = left > 0 ? 1.0 : -1.0;  // P+ branch vs. -P- branch
      const auto row = static_cast<Eigen::Index>(cfg ^ (SpinConfig{1} << j));
      s_gen(row, col) += scale * sign * a_elem;
    }
  }
  return s_gen;
}

RealMatrix dimer_block_part(const RealMatrix& op, int length) {
  const auto n = static_cast<Eigen::Index>(hilbert_dimension(length));
  if (op.rows() != n || op.cols() != n) {
    throw Error(ErrorCode::dimension_mismatch, "dimer_block_part: operator must be 2^L x 2^L");
  }
  std::vector<int> d(static_cast<std::size_t>(n));
  for (Eigen::Index s = 0; s < n; ++s) d[static_cast<std::size_t>(s)] = dimer_count(static_cast<SpinConfig>(s), length);
  RealMatrix out = op;
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      if (d[static_cast<std::size_t>(r)] != d[static_cast<std::size_t>(c)]) out(r, c) = 0.0;
    }
  }
  return out;
}

RealMatrix sw_first_order(const ModelParams& params, int length) {
  const RealMatrix h = build_full(Model::ising, params, length);
  const RealMatrix s_gen = build_sw_generator(params, length);
  const RealMatrix rotated = h + s_gen * h - h * s_gen;
  return dimer_block_part(rotated, length);
}

}  // namespace z2scars
