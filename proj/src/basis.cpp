#include "z2scars/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "z2scars/error.hpp"

namespace z2scars {

namespace {

SpinConfig mask_for(int length) {
  return static_cast<SpinConfig>((std::uint64_t{1} << length) - 1);
}

SpinConfig rotate_left(SpinConfig s, int length, int shift) {
  shift %= length;
  if (shift < 0) shift += length;
  if (shift == 0) return s;
  return ((s << shift) | (s >> (length - shift))) & mask_for(length);
}

SpinConfig reverse_bits(SpinConfig s, int length) {
  SpinConfig out = 0;
  for (int i = 0; i < length; ++i) {
    out |= ((s >> i) & 1u) << (length - 1 - i);
  }
  return out;
}

template <typename Scalar>
Scalar narrow(Complex z) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return z.real();
  } else {
    return z;
  }
}

template <typename Scalar>
Vector<Scalar> unfold(const Vector<Scalar>& coefficients, const SectorBasis& basis) {
  if (static_cast<std::size_t>(coefficients.size()) != basis.dimension()) {
    throw Error(ErrorCode::dimension_mismatch,
                "sector_to_full: vector length " + std::to_string(coefficients.size()) +
                    " != sector dimension " + std::to_string(basis.dimension()));
  }
  if constexpr (std::is_same_v<Scalar, double>) {
    if (!basis.is_real()) {
      throw Error(ErrorCode::invalid_sector, "real unfolding requested for a complex sector");
    }
  }
  Vector<Scalar> full = Vector<Scalar>::Zero(static_cast<Eigen::Index>(hilbert_dimension(basis.length())));
  for (std::size_t a = 0; a < basis.dimension(); ++a) {
    const Scalar c = coefficients[static_cast<Eigen::Index>(a)];
    if (c == Scalar(0)) continue;
    for (const auto& [config, amp] : basis.components(a)) {
      full[config] += narrow<Scalar>(amp) * c;
    }
  }
  return full;
}

template <typename Scalar>
Vector<Scalar> fold(const Vector<Scalar>& state, const SectorBasis& basis) {
  if (static_cast<std::size_t>(state.size()) != hilbert_dimension(basis.length())) {
    throw Error(ErrorCode::dimension_mismatch,
                "full_to_sector: vector length " + std::to_string(state.size()) +
                    " != 2^" + std::to_string(basis.length()));
  }
  if constexpr (std::is_same_v<Scalar, double>) {
    if (!basis.is_real()) {
      throw Error(ErrorCode::invalid_sector, "real projection requested for a complex sector");
    }
  }
  Vector<Scalar> out(static_cast<Eigen::Index>(basis.dimension()));
  for (std::size_t a = 0; a < basis.dimension(); ++a) {
    Scalar acc(0);
    for (const auto& [config, amp] : basis.components(a)) {
      if constexpr (std::is_same_v<Scalar, double>) {
        acc += amp.real() * state[config];
      } else {
        acc += std::conj(amp) * state[config];
      }
    }
    out[static_cast<Eigen::Index>(a)] = acc;
  }
  return out;
}

}  // namespace

SpinConfig translate(SpinConfig s, int length, int shift) {
  return rotate_left(s, length, shift);
}

SpinConfig reflect(SpinConfig s, int length, Reflection kind) {
  const SpinConfig mirrored = reverse_bits(s, length);
  return kind == Reflection::bond ? mirrored : rotate_left(mirrored, length, 1);
}

OrbitLocation representative(SpinConfig s, int length, bool use_reflection, Reflection kind) {
  // Scan every image g*s; the smallest one is the representative r, and
  // s = g^{-1} r. For g = T^j, g^{-1} = T^{-j}. For g = T^j R, g^{-1} = T^j R.
  OrbitLocation best{s, 0, false};
  int best_j = 0;
  bool best_q = false;
  const int passes = use_reflection ? 2 : 1;
  for (int q = 0; q < passes; ++q) {
    SpinConfig c = q == 0 ? s : reflect(s, length, kind);
    for (int j = 0; j < length; ++j) {
      if (c < best.rep) {
        best.rep = c;
        best_j = j;
        best_q = q == 1;
      }
      c = rotate_left(c, length, 1);
    }
  }
  best.reflected = best_q;
  best.shift = best_q ? best_j : (length - best_j) % length;
  return best;
}

std::vector<SymmetrySector> all_sectors(int length) {
  std::vector<SymmetrySector> out;
  for (int k = 0; k < length; ++k) {
    if (k == 0 || 2 * k == length) {
      out.push_back({k, Parity::even});
      out.push_back({k, Parity::odd});
    } else {
      out.push_back({k, Parity::unresolved});
    }
  }
  return out;
}

bool SectorBasis::is_real() const {
  return sector_.momentum == 0 || 2 * sector_.momentum == length_;
}

std::optional<std::size_t> SectorBasis::index_of(SpinConfig rep) const {
  const auto it = std::lower_bound(reps_.begin(), reps_.end(), rep);
  if (it == reps_.end() || *it != rep) return std::nullopt;
  return static_cast<std::size_t>(it - reps_.begin());
}

Complex SectorBasis::character(int shift, bool reflected) const {
  Complex chi{1.0, 0.0};
  const int k = sector_.momentum;
  if (k == 0) {
    chi = 1.0;
  } else if (2 * k == length_) {
    chi = (shift % 2 == 0) ? 1.0 : -1.0;
  } else {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>((k * shift) % length_) /
                         static_cast<double>(length_);
    chi = std::polar(1.0, phase);
  }
  if (reflected && sector_.parity == Parity::odd) chi = -chi;
  return chi;
}

std::vector<std::pair<SpinConfig, Complex>> SectorBasis::components(std::size_t index) const {
  const SpinConfig rep = reps_.at(index);
  const int passes = uses_reflection() ? 2 : 1;
  const double group_order = static_cast<double>(passes * length_);
  std::vector<std::pair<SpinConfig, Complex>> out;
  out.reserve(static_cast<std::size_t>(passes * length_));
  for (int q = 0; q < passes; ++q) {
    SpinConfig c = q == 0 ? rep : reflect(rep, length_, reflection_);
    for (int j = 0; j < length_; ++j) {
      const Complex amp = std::conj(character(j, q == 1)) / group_order;
      auto it = std::find_if(out.begin(), out.end(), [c](const auto& p) { return p.first == c; });
      if (it == out.end()) {
        out.emplace_back(c, amp);
      } else {
        it->second += amp;
      }
      c = rotate_left(c, length_, 1);
    }
  }
  const double norm = norms_.at(index);
  for (auto& p : out) p.second /= norm;
  std::erase_if(out, [](const auto& p) { return std::abs(p.second) < 1e-14; });
  return out;
}

SectorBasis enumerate_sector(int length, SymmetrySector sector, Reflection kind, int max_length) {
  if (length < 2 || length % 2 != 0) {
    throw Error(ErrorCode::invalid_parameters,
                "chain length must be even and >= 2, got " + std::to_string(length));
  }
  if (length > max_length || length > kMaxChainLength) {
    throw Error(ErrorCode::length_too_large,
                "chain length " + std::to_string(length) + " exceeds cap " +
                    std::to_string(std::min(max_length, kMaxChainLength)));
  }
  if (sector.momentum < 0 || sector.momentum >= length) {
    throw Error(ErrorCode::invalid_sector,
                "momentum index " + std::to_string(sector.momentum) + " outside [0, L)");
  }
  const bool reflection_allowed = sector.momentum == 0 || 2 * sector.momentum == length;
  if (sector.parity != Parity::unresolved && !reflection_allowed) {
    throw Error(ErrorCode::invalid_sector,
                "reflection parity only defined at k = 0 or k = L/2, got k = " +
                    std::to_string(sector.momentum));
  }

  SectorBasis basis;
  basis.length_ = length;
  basis.sector_ = sector;
  basis.reflection_ = kind;

  const bool use_reflection = sector.parity != Parity::unresolved;
  const int passes = use_reflection ? 2 : 1;
  const double group_order = static_cast<double>(passes * length);
  const std::size_t n_states = hilbert_dimension(length);
  std::vector<std::pair<SpinConfig, Complex>> acc;
  for (std::size_t n = 0; n < n_states; ++n) {
    const auto s = static_cast<SpinConfig>(n);
    if (representative(s, length, use_reflection, kind).rep != s) continue;
    // ||P|s>||^2 from the explicit projection
    acc.clear();
    for (int q = 0; q < passes; ++q) {
      SpinConfig c = q == 0 ? s : reflect(s, length, kind);
      for (int j = 0; j < length; ++j) {
        const Complex amp = std::conj(basis.character(j, q == 1)) / group_order;
        auto it = std::find_if(acc.begin(), acc.end(), [c](const auto& p) { return p.first == c; });
        if (it == acc.end()) {
          acc.emplace_back(c, amp);
        } else {
          it->second += amp;
        }
        c = rotate_left(c, length, 1);
      }
    }
    double norm2 = 0.0;
    for (const auto& p : acc) norm2 += std::norm(p.second);
    // Compatible orbits have norm2 >= 1/(2L)^2; incompatible ones cancel exactly.
    if (norm2 < 1e-12) continue;
    basis.reps_.push_back(s);
    basis.norms_.push_back(std::sqrt(norm2));
  }
  return basis;
}

RealVector sector_to_full(const RealVector& coefficients, const SectorBasis& basis) {
  return unfold(coefficients, basis);
}

ComplexVector sector_to_full(const ComplexVector& coefficients, const SectorBasis& basis) {
  return unfold(coefficients, basis);
}

RealVector full_to_sector(const RealVector& state, const SectorBasis& basis) {
  return fold(state, basis);
}

ComplexVector full_to_sector(const ComplexVector& state, const SectorBasis& basis) {
  return fold(state, basis);
}

}  // namespace z2scars
