#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "z2scars/basis.hpp"
#include "z2scars/error.hpp"
#include "z2scars/hamiltonian.hpp"
#include "z2scars/spectral.hpp"

using namespace z2scars;

TEST_CASE("2x2 diagonalization") {
  RealMatrix m(2, 2);
  m << 1.0, 2.0, 2.0, -2.0;
  const auto sol = diagonalize<double>(m);
  CHECK(sol.energies[0] == doctest::Approx(-3.0));
  CHECK(sol.energies[1] == doctest::Approx(2.0));
  const RealMatrix back = sol.vectors * sol.energies.asDiagonal() * sol.vectors.transpose();
  CHECK((back - m).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((sol.vectors.transpose() * sol.vectors - RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("random symmetric and Hermitian reconstruction") {
  std::mt19937_64 rng(21);
  const RealMatrix a = oracle::goe(60, rng);
  const auto sol = diagonalize<double>(a);
  CHECK(std::is_sorted(sol.energies.begin(), sol.energies.end()));
  CHECK((sol.vectors * sol.energies.asDiagonal() * sol.vectors.transpose() - a).cwiseAbs().maxCoeff() < 1e-11);
  CHECK((eigenvalues(a) - sol.energies).cwiseAbs().maxCoeff() < 1e-11);

  const RealMatrix b = oracle::goe(40, rng);
  const ComplexMatrix c = a.topLeftCorner(40, 40).cast<Complex>() + Complex(0.0, 1.0) * (b - b.transpose()).cast<Complex>();
  const auto csol = diagonalize<Complex>(c);
  CHECK((csol.vectors * csol.energies.cast<Complex>().asDiagonal() * csol.vectors.adjoint() - c).cwiseAbs().maxCoeff() <
        1e-11);
}

TEST_CASE("gap ratio on hand-made spectra") {
  std::vector<double> equal(50);
  for (std::size_t i = 0; i < equal.size(); ++i) equal[i] = static_cast<double>(i);
  CHECK(gap_ratio(equal) == doctest::Approx(1.0));
  CHECK(gap_ratio(equal, 0.0) == doctest::Approx(1.0));

  // 0, 1, 3: one ratio, min(1,2)/max(1,2)
  const std::vector<double> three{0.0, 1.0, 3.0};
  CHECK(gap_ratio(three, 0.0) == doctest::Approx(0.5));

  // exact pairs: every other gap vanishes
  std::vector<double> pairs;
  for (int i = 0; i < 20; ++i) pairs.insert(pairs.end(), {double(i), double(i)});
  CHECK(gap_ratio(pairs, 0.0) == doctest::Approx(0.0));

  try {
    const std::vector<double> two{0.0, 1.0};
    gap_ratio(two, 0.0);
    FAIL("expected too_few_levels");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::too_few_levels);
  }
}

TEST_CASE("gap ratio reproduces GOE and Poisson statistics") {
  std::mt19937_64 rng(1234);
  double goe_sum = 0.0;
  const int samples = 6;
  for (int i = 0; i < samples; ++i) {
    const RealVector e = eigenvalues(oracle::goe(1000, rng));
    goe_sum += gap_ratio({e.data(), static_cast<std::size_t>(e.size())}, 0.2);
  }
  CHECK(goe_sum / samples == doctest::Approx(kGoeGapRatio).epsilon(0.02));

  std::exponential_distribution<double> expo(1.0);
  double poisson_sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    std::vector<double> levels(5000);
    double x = 0.0;
    for (double& l : levels) l = (x += expo(rng));
    poisson_sum += gap_ratio(levels);
  }
  CHECK(poisson_sum / samples == doctest::Approx(kPoissonGapRatio).epsilon(0.02));
}

TEST_CASE("entanglement entropy examples") {
  const int length = 4;
  RealVector product = RealVector::Zero(16);
  product[0b0110] = 1.0;
  CHECK(entanglement_entropy(product, length) == doctest::Approx(0.0));

  // Bell pair across the cut (sites 1 and 2)
  RealVector bell = RealVector::Zero(16);
  bell[0b0000] = bell[0b0110] = 1.0 / std::sqrt(2.0);
  CHECK(entanglement_entropy(bell, length) == doctest::Approx(std::log(2.0)));

  // maximally entangled across all L/2 pairs
  RealVector maximal = RealVector::Zero(16);
  for (int a = 0; a < 4; ++a) maximal[a | (a << 2)] = 0.5;
  CHECK(entanglement_entropy(maximal, length) == doctest::Approx(2.0 * std::log(2.0)));

  CHECK_THROWS_AS(entanglement_entropy(RealVector(2.0 * bell), length), Error);
  try {
    entanglement_entropy(RealVector(0.5 * product), length);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::non_normalized_input);
  }
}

TEST_CASE("entropy agrees with an independent SVD and is symmetric under swapping halves") {
  std::mt19937_64 rng(9);
  const int length = 10;
  const int half = 1 << (length / 2);
  for (int trial = 0; trial < 4; ++trial) {
    const RealVector v = oracle::random_unit(1 << length, rng);
    const double s = entanglement_entropy(v, length);
    CHECK(s == doctest::Approx(oracle::entropy(v.cast<Complex>(), length)).epsilon(1e-10));
    RealVector swapped(v.size());
    for (int x = 0; x < (1 << length); ++x) swapped[(x % half) * half + x / half] = v[x];
    CHECK(entanglement_entropy(swapped, length) == doctest::Approx(s).epsilon(1e-10));
    CHECK(s <= (length / 2) * std::log(2.0) + 1e-12);

    ComplexVector c(v.size());
    const RealVector w = oracle::random_unit(1 << length, rng);
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = Complex(v[i], w[i]) / std::sqrt(2.0);
    c.normalize();
    CHECK(entanglement_entropy(c, length) == doctest::Approx(oracle::entropy(c, length)).epsilon(1e-10));
  }
}

TEST_CASE("random-matrix entropy reference") {
  CHECK(s_rmt(16) == doctest::Approx(4.9486).epsilon(1e-4));
  CHECK(s_rmt(2) == doctest::Approx(0.0966).epsilon(1e-3));
  for (int length = 2; length < 20; length += 2) CHECK(s_rmt(length + 2) > s_rmt(length));
}

TEST_CASE("random states sit between the eigenstate reference and the Page value") {
  std::mt19937_64 rng(17);
  const int length = 12;
  double sum = 0.0;
  for (int i = 0; i < 10; ++i) sum += entanglement_entropy(oracle::random_unit(1 << length, rng), length);
  const double page = 0.5 * length * std::log(2.0) - 0.5;
  CHECK(sum / 10.0 > s_rmt(length));
  CHECK(sum / 10.0 == doctest::Approx(page).epsilon(0.01));
}

TEST_CASE("sector eigenvalues match the full spectrum") {
  const ModelParams p{0.45, 0.25, 1.0};
  for (int length : {6, 8, 10}) {
    std::vector<double> all;
    for (const auto& sector : all_sectors(length)) {
      auto basis = std::make_shared<const SectorBasis>(enumerate_sector(length, sector));
      if (basis->is_real()) {
        const auto e = diagonalize(build_block<double>(Model::ising, p, basis)).energies;
        all.insert(all.end(), e.begin(), e.end());
      } else {
        const auto e = diagonalize(build_block<Complex>(Model::ising, p, basis)).energies;
        all.insert(all.end(), e.begin(), e.end());
      }
    }
    std::sort(all.begin(), all.end());
    const RealVector full = eigenvalues(oracle::ising(p.t, p.h, p.mu, length));
    REQUIRE(all.size() == static_cast<std::size_t>(full.size()));
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == doctest::Approx(full[Eigen::Index(i)]).epsilon(1e-10));
  }
}
