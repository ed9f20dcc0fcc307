#include "z2scars/scan.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "parallel.hpp"
#include "z2scars/error.hpp"

namespace z2scars {

const char* to_string(Region region) {
  switch (region) {
    case Region::qmbs_possible: return "QMBS-possible";
    case Region::chaotic_no_scars: return "chaotic-no-scars";
    case Region::mixed: return "mixed";
    case Region::nonergodic_high_s: return "nonergodic-high-S";
  }
  return "?";
}

const char* to_string(Confinement label) {
  return label == Confinement::confined ? "CC" : "CD";
}

Region classify_point(double r_mean, double s_min_rel, const ScanThresholds& thresholds) {
  const bool ergodic = r_mean > thresholds.gap_ratio;
  const bool low_entropy = s_min_rel < thresholds.relative_entropy;
  if (ergodic) return low_entropy ? Region::qmbs_possible : Region::chaotic_no_scars;
  return low_entropy ? Region::mixed : Region::nonergodic_high_s;
}

ConfinementResult confinement_label(const RealVector& ground_state, int length, double threshold) {
  if (static_cast<std::size_t>(ground_state.size()) != hilbert_dimension(length)) {
    throw Error(ErrorCode::dimension_mismatch, "confinement_label: state must have length 2^L");
  }
  // (1/L^2) <(sum_i (-1)^i Z_i)^2>, diagonal in the computational basis
  double acc = 0.0;
  for (Eigen::Index s = 0; s < ground_state.size(); ++s) {
    const double w = ground_state[s] * ground_state[s];
    if (w == 0.0) continue;
    int stagger = 0;
    for (int i = 0; i < length; ++i) stagger += (i % 2 == 0 ? 1 : -1) * spin_z(static_cast<SpinConfig>(s), i);
    acc += w * stagger * stagger;
  }
  const double sf = acc / (static_cast<double>(length) * length);
  return {sf > threshold ? Confinement::deconfined : Confinement::confined, sf};
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw Error(ErrorCode::invalid_parameters, "grid needs step > 0 and hi >= lo");
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> out;
  for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

namespace {

ScanPoint evaluate(const ModelParams& params, const std::shared_ptr<const SectorBasis>& basis,
                   const ScanThresholds& thresholds) {
  const int length = basis->length();
  const auto sol = diagonalize(build_ising(params, basis));
  ScanPoint p;
  p.t = params.t;
  p.h = params.h;
  p.r_mean = gap_ratio({sol.energies.data(), sol.size()}, thresholds.trim_fraction);

  // central 50% by index
  const std::size_t n = sol.size();
  const std::size_t lo = n / 4;
  const std::size_t hi = std::max(lo + 1, n - n / 4);
  const double reference = s_rmt(length);
  double s_min = std::numeric_limits<double>::infinity();
  for (std::size_t a = lo; a < hi; ++a) {
    const RealVector full = sector_to_full(RealVector(sol.vectors.col(static_cast<Eigen::Index>(a))), *basis);
    s_min = std::min(s_min, entanglement_entropy(full, length));
  }
  p.s_min_rel = s_min / reference;
  p.region = classify_point(p.r_mean, p.s_min_rel, thresholds);

  const RealVector ground = sector_to_full(RealVector(sol.vectors.col(0)), *basis);
  const auto conf = confinement_label(ground, length, thresholds.structure_factor);
  p.structure_factor = conf.structure_factor;
  p.confinement = conf.label;
  return p;
}

}  // namespace

ScanPoint scan_point(const ModelParams& params, int length, const ScanThresholds& thresholds) {
  auto basis = std::make_shared<const SectorBasis>(enumerate_sector(length, kZeroMomentumEven));
  return evaluate(params, basis, thresholds);
}

std::vector<ScanPoint> scan_grid(const std::vector<double>& t_values, const std::vector<double>& h_values,
                                 int length, const ScanThresholds& thresholds, int jobs, double mu) {
  auto basis = std::make_shared<const SectorBasis>(enumerate_sector(length, kZeroMomentumEven));
  std::vector<ScanPoint> out(t_values.size() * h_values.size());
  parallel_for(out.size(), jobs, [&](std::size_t idx) {
    const double t = t_values[idx / h_values.size()];
    const double h = h_values[idx % h_values.size()];
    out[idx] = evaluate({t, h, mu}, basis, thresholds);
  });
  return out;
}

}  // namespace z2scars
