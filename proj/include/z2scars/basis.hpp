#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "z2scars/types.hpp"

namespace z2scars {

/// Spatial reflection used for the parity quantum number.
///  bond: site i -> L-1-i (mirror through the bond between L/2-1 and L/2)
///  site: site i -> (L-i) mod L (mirror through site 0)
/// At zero momentum the two give identical blocks, since site = T * bond.
enum class Reflection { bond, site };

enum class Parity : int { odd = -1, unresolved = 0, even = 1 };

struct SymmetrySector {
  int momentum = 0;  // k in [0, L), crystal momentum 2*pi*k/L
  Parity parity = Parity::even;

  bool operator==(const SymmetrySector&) const = default;
};

/// Default working block: zero momentum, reflection-even.
inline constexpr SymmetrySector kZeroMomentumEven{0, Parity::even};

/// Rotates the chain by `shift` sites: the spin at site i moves to i+shift.
SpinConfig translate(SpinConfig s, int length, int shift = 1);
SpinConfig reflect(SpinConfig s, int length, Reflection kind = Reflection::bond);

struct OrbitLocation {
  SpinConfig rep = 0;
  int shift = 0;
  bool reflected = false;
};

/// Finds the orbit minimum of `s`. The returned transformation maps the
/// representative back onto `s`: s = T^shift (R^reflected rep).
OrbitLocation representative(SpinConfig s, int length, bool use_reflection,
                             Reflection kind = Reflection::bond);

/// All sectors whose dimensions partition the 2^L states: every momentum,
/// with both parities at k = 0 and k = L/2.
std::vector<SymmetrySector> all_sectors(int length);

/// Orbit representatives and normalizations of one (momentum, parity) block.
///
/// Basis state a is P|r_a>/norm_a, where r_a is the representative, P the
/// projector onto the block built from the translation (and reflection)
/// characters, and norm_a = ||P|r_a>||.
class SectorBasis {
 public:
  int length() const { return length_; }
  SymmetrySector sector() const { return sector_; }
  Reflection reflection_kind() const { return reflection_; }
  std::size_t dimension() const { return reps_.size(); }

  std::span<const SpinConfig> representatives() const { return reps_; }
  std::span<const double> norms() const { return norms_; }

  /// True when all characters are real (k = 0 or k = L/2).
  bool is_real() const;
  bool uses_reflection() const { return sector_.parity != Parity::unresolved; }

  std::optional<std::size_t> index_of(SpinConfig rep) const;

  /// Character of the group element T^shift R^reflected.
  Complex character(int shift, bool reflected) const;

  /// Full-basis components of basis state `index` (distinct configurations).
  std::vector<std::pair<SpinConfig, Complex>> components(std::size_t index) const;

 private:
  friend SectorBasis enumerate_sector(int, SymmetrySector, Reflection, int);

  int length_ = 0;
  SymmetrySector sector_{};
  Reflection reflection_ = Reflection::bond;
  std::vector<SpinConfig> reps_;
  std::vector<double> norms_;
};

/// Builds the block. Throws invalid_sector when a parity is requested away
/// from k in {0, L/2}, and length_too_large when L exceeds `max_length`.
SectorBasis enumerate_sector(int length, SymmetrySector sector,
                             Reflection kind = Reflection::bond,
                             int max_length = kMaxChainLength);

/// Unfolds block coefficients onto the 2^L computational basis.
RealVector sector_to_full(const RealVector& coefficients, const SectorBasis& basis);
ComplexVector sector_to_full(const ComplexVector& coefficients, const SectorBasis& basis);

/// Orthogonal projection of a full-basis vector onto the block, expressed in
/// block coefficients.
RealVector full_to_sector(const RealVector& state, const SectorBasis& basis);
ComplexVector full_to_sector(const ComplexVector& state, const SectorBasis& basis);

}  // namespace z2scars
