#pragma once

#include <optional>
#include <string>
#include <vector>

#include "z2scars/basis.hpp"
#include "z2scars/hamiltonian.hpp"
#include "z2scars/scars.hpp"

namespace z2scars {

struct ParamPoint {
  double t = 0.0;
  double h = 0.0;
};

/// Straight segment in (t, h) walked with `fine_step`. `coarse_step` is the
/// parameter change covered by one eigenindex-stability window.
struct PathSegment {
  ParamPoint start;
  ParamPoint end;
  ParamPoint fine_step;
  ParamPoint coarse_step;
};

struct ParameterPath {
  std::string name;
  std::vector<PathSegment> segments;

  /// Every fine-grid point, start of the first segment included, shared
  /// segment endpoints listed once. Throws invalid_parameters if segments are
  /// not contiguous or a step does not divide its segment.
  std::vector<ParamPoint> points() const;

  /// Copy of the path cut at the first point with t >= t_stop (h-only
  /// segments never cut).
  ParameterPath truncated_at_t(double t_stop) const;
};

/// "path0": t = 3h from (0.003, 0.001) to (0.45, 0.15), fine step (0.003, 0.001).
/// "pathI": t = 0.2h from (0.0002, 0.001) to (0.1, 0.5) in steps (0.0002, 0.001),
///          then h = 0.5 fixed and t from 0.1 to 0.3 in steps of 0.001.
/// Throws unknown_name otherwise.
ParameterPath preset_path(const std::string& name);

struct TrackingPolicy {
  double accept_threshold = 0.7;
  int patience = 20;
  /// Number of later diagonalizations whose argmax eigenindex must agree
  /// before the reference vector is replaced.
  int lookahead = 10;
  /// false: always replace the reference (adiabatic following).
  bool diabatic = true;
  SymmetrySector sector = kZeroMomentumEven;
  double mu = 1.0;
};

struct TrackEntry {
  double t = 0.0;
  double h = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  double overlap = 0.0;
  std::size_t eigenindex = 0;
  bool accepted = false;
  bool crossing = false;
};

struct TrackRecord {
  ScarLabel label;
  std::string path_name;
  int length = 0;
  std::vector<TrackEntry> entries;
  /// Set when the overlap stayed below the threshold for more than
  /// `patience` consecutive steps; tracking stops at that entry.
  std::optional<std::size_t> lost_at;

  bool lost() const { return lost_at.has_value(); }
};

/// Follows the tower state `initial` along `path`, as described for
/// track_many.
TrackRecord track(const ParameterPath& path, const ScarLabel& initial, int length,
                  const TrackingPolicy& policy = {});

/// Follows several tower states along one path, sharing diagonalizations.
///
/// At the first point the exact tower state is matched to the block
/// eigenstate of largest overlap, which becomes the reference. At every later
/// point the block is diagonalized and the eigenstate of largest overlap
/// with the reference is recorded. It replaces the reference only if the
/// overlap clears the threshold and the largest-overlap eigenindex stays the
/// same over the next `lookahead` diagonalizations, which are spread evenly
/// over the segment's coarse step. Otherwise the step is flagged as a crossing
/// and the old reference is kept.
std::vector<TrackRecord> track_many(const ParameterPath& path, const std::vector<ScarLabel>& initial,
                                    int length, const TrackingPolicy& policy = {});

/// First entry from which S >= fraction * reference holds for at least
/// `sustain` consecutive entries (a track that ends inside such a run also
/// counts). Isolated spikes at avoided crossings are skipped this way.
std::optional<std::size_t> entropy_loss_point(const TrackRecord& record, double reference,
                                              double fraction = 0.5, int sustain = 10);

struct EntropySpike {
  std::size_t index = 0;
  double t = 0.0;
  double h = 0.0;
  double excess = 0.0;       // S minus local baseline
  bool overlap_dip = false;  // overlap below its local baseline at the same step
};

struct SpikePolicy {
  int half_window = 5;
  double threshold = 0.2;    // absolute entropy excess
  double dip_threshold = 0.02;
};

/// Local maxima of S exceeding the median of the surrounding window by more
/// than `threshold`.
std::vector<EntropySpike> entropy_spike_report(const TrackRecord& record, const SpikePolicy& policy = {});

/// Couplings h at which the t = 0 level with dimer number `dimers` and
/// magnetization `magnetization` is degenerate with another classical
/// manifold of an L-site ring, restricted to (h_min, h_max].
std::vector<double> manifold_crossings(int dimers, int magnetization, int length, double h_min,
                                       double h_max, double mu = 1.0);

}  // namespace z2scars
