#pragma once

#include <string>
#include <vector>

#include "z2scars/hamiltonian.hpp"
#include "z2scars/spectral.hpp"

namespace z2scars {

enum class Region { qmbs_possible, chaotic_no_scars, mixed, nonergodic_high_s };
enum class Confinement { confined, deconfined };  // CC, CD

const char* to_string(Region region);
const char* to_string(Confinement label);

struct ScanThresholds {
  double gap_ratio = 0.5;
  double relative_entropy = 0.5;
  double structure_factor = 0.2;
  double trim_fraction = kDefaultTrimFraction;
};

struct ScanPoint {
  double t = 0.0;
  double h = 0.0;
  double r_mean = 0.0;
  double s_min_rel = 0.0;
  double structure_factor = 0.0;
  Region region = Region::mixed;
  Confinement confinement = Confinement::confined;
};

/// Four-way split on r > threshold and S/S_RMT < threshold.
Region classify_point(double r_mean, double s_min_rel, const ScanThresholds& thresholds = {});

struct ConfinementResult {
  Confinement label = Confinement::confined;
  double structure_factor = 0.0;
};

/// Staggered structure factor (1/L^2) sum_ij (-1)^(i-j) <Z_i Z_j> of a
/// normalized full-basis state; CD when it exceeds `threshold`.
ConfinementResult confinement_label(const RealVector& ground_state, int length, double threshold = 0.2);

/// Inclusive grid lo, lo+step, ..., up to hi.
std::vector<double> linear_grid(double lo, double hi, double step);

/// Evaluates one (t, h) point on the (k=0, even) block.
ScanPoint scan_point(const ModelParams& params, int length, const ScanThresholds& thresholds = {});

/// Row-major over t (outer) and h (inner); points run on up to `jobs`
/// threads, output ordering is independent of `jobs`.
std::vector<ScanPoint> scan_grid(const std::vector<double>& t_values, const std::vector<double>& h_values,
                                 int length, const ScanThresholds& thresholds = {}, int jobs = 1,
                                 double mu = 1.0);

}  // namespace z2scars
