#pragma once

#include <string>
#include <vector>

#include "z2scars/hamiltonian.hpp"
#include "z2scars/types.hpp"

namespace z2scars {

/// Gauged Kitaev chain on L fermion sites and L links (periodic).
///
/// Basis index = occupations | (links << L): bit j of the low word is n_j,
/// bit j of the high word is the sigma^z eigenvalue of link j+1/2 (the link
/// between sites j and j+1 mod L), with bit 0 meaning +1.
///
/// Fermion signs use a Jordan-Wigner string ordered from `origin`: c_j picks
/// up (-1) for every occupied mode that precedes j in the order
/// origin, origin+1, ..., origin+L-1 (mod L).
namespace gauge {

inline constexpr int kMaxLength = 6;

/// Full 4^L Hamiltonian
///   -t sum_j (c+_j - c_j) sz_{j+1/2} (c+_{j+1} + c_{j+1})
///   -mu sum_j (n_j - 1/2) - h sum_j sx_{j+1/2}.
RealMatrix build_gauged_kitaev(const ModelParams& params, int length, int origin = 0);

/// G_j = sx_{j-1/2} (-1)^{n_j} sx_{j+1/2}, a signed permutation.
RealMatrix gauss_operator(int site, int length);

/// Demanded G_j eigenvalues, one +-1 per site.
struct GaussSector {
  std::vector<int> signs;

  static GaussSector uniform(int length) { return {std::vector<int>(static_cast<std::size_t>(length), 1)}; }
};

/// Projector prod_j (1 + s_j G_j)/2 as a dense 4^L matrix.
RealMatrix gauss_projector(const GaussSector& sector, int length);

/// Orthonormal columns spanning the Gauss sector (4^L x 2^L).
RealMatrix gauss_sector_basis(const GaussSector& sector, int length);

/// One attempted pairing between a Gauss sector and an Ising variant.
struct PairingAttempt {
  std::string description;
  double max_mismatch = 0.0;
  bool matched = false;
};

struct DualityReport {
  bool matched = false;
  double max_gap_mismatch = 0.0;
  std::string sector_bookkeeping;
  std::vector<PairingAttempt> attempts;
  double tolerance = 0.0;
};

inline constexpr double kDualityTolerance = 1e-10;

/// Compares the all-(+1) Gauss-sector spectrum with the Ising chain on the
/// dual lattice, trying the periodic chain first and then the chain with a
/// sign-flipped boundary bond. Throws no_match_found, listing every attempt,
/// if none agrees within `tolerance`.
DualityReport validate_duality(const ModelParams& params, int length,
                               double tolerance = kDualityTolerance);

}  // namespace gauge
}  // namespace z2scars
