#include "z2scars/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>

#include "z2scars/error.hpp"
#include "z2scars/spectral.hpp"

namespace z2scars {

namespace {

constexpr double kGridTolerance = 1e-9;

bool same_point(const ParamPoint& a, const ParamPoint& b) {
  return std::abs(a.t - b.t) < kGridTolerance && std::abs(a.h - b.h) < kGridTolerance;
}

// Number of fine steps in a segment, checked against both components.
long segment_steps(const PathSegment& seg) {
  const double dt = seg.end.t - seg.start.t;
  const double dh = seg.end.h - seg.start.h;
  long steps = -1;
  auto check = [&](double span, double step) {
    if (step == 0.0) {
      if (std::abs(span) > kGridTolerance) {
        throw Error(ErrorCode::invalid_parameters, "path segment moves along a coordinate with zero step");
      }
      return;
    }
    if (step < 0.0) throw Error(ErrorCode::invalid_parameters, "path steps must be positive");
    const double ratio = std::abs(span) / step;
    const long n = std::lround(ratio);
    if (std::abs(ratio - static_cast<double>(n)) > 1e-6) {
      throw Error(ErrorCode::invalid_parameters, "fine step does not divide the path segment");
    }
    if (steps >= 0 && steps != n) {
      throw Error(ErrorCode::invalid_parameters, "t and h step counts disagree on a path segment");
    }
    steps = n;
  };
  check(dt, seg.fine_step.t);
  check(dh, seg.fine_step.h);
  return std::max(steps, 0L);
}

struct GridPoint {
  ParamPoint p;
  int stride = 1;  // fine steps between look-ahead diagonalizations
};

int lookahead_stride(const PathSegment& seg, int lookahead) {
  const double fine = seg.fine_step.h > 0.0 ? seg.fine_step.h : seg.fine_step.t;
  const double coarse = seg.fine_step.h > 0.0 ? seg.coarse_step.h : seg.coarse_step.t;
  if (fine <= 0.0 || coarse <= 0.0 || lookahead <= 0) return 1;
  return std::max(1, static_cast<int>(std::lround(coarse / (fine * lookahead))));
}

std::vector<GridPoint> grid_points(const ParameterPath& path, int lookahead) {
  std::vector<GridPoint> out;
  for (std::size_t s = 0; s < path.segments.size(); ++s) {
    const auto& seg = path.segments[s];
    if (s > 0 && !same_point(path.segments[s - 1].end, seg.start)) {
      throw Error(ErrorCode::invalid_parameters, "path segments are not contiguous");
    }
    const long n = segment_steps(seg);
    const int stride = lookahead_stride(seg, lookahead);
    const double sign_t = seg.end.t >= seg.start.t ? 1.0 : -1.0;
    const double sign_h = seg.end.h >= seg.start.h ? 1.0 : -1.0;
    for (long i = (s == 0 ? 0 : 1); i <= n; ++i) {
      const auto k = static_cast<double>(i);
      ParamPoint p{seg.start.t + sign_t * k * seg.fine_step.t, seg.start.h + sign_h * k * seg.fine_step.h};
      if (i == n) p = seg.end;
      out.push_back({p, stride});
    }
  }
  return out;
}

// Diagonalizations keyed by grid index; dropped once the walk has passed them.
class SolutionCache {
 public:
  SolutionCache(std::vector<GridPoint> grid, std::shared_ptr<const SectorBasis> basis, double mu)
      : grid_(std::move(grid)), basis_(std::move(basis)), mu_(mu) {}

  const RealEigenSolution& at(std::size_t i) {
    auto it = cache_.find(i);
    if (it == cache_.end()) {
      const ModelParams params{grid_[i].p.t, grid_[i].p.h, mu_};
      it = cache_.emplace(i, diagonalize(build_ising(params, basis_))).first;
    }
    return it->second;
  }

  void release_before(std::size_t i) { cache_.erase(cache_.begin(), cache_.lower_bound(i)); }

  const std::vector<GridPoint>& grid() const { return grid_; }

 private:
  std::vector<GridPoint> grid_;
  std::shared_ptr<const SectorBasis> basis_;
  double mu_;
  std::map<std::size_t, RealEigenSolution> cache_;
};

struct BestMatch {
  Eigen::Index index = 0;
  double overlap = 0.0;
};

BestMatch best_match(const RealEigenSolution& sol, const RealVector& reference) {
  const RealVector overlaps = (sol.vectors.transpose() * reference).cwiseAbs();
  BestMatch m;
  m.overlap = overlaps.maxCoeff(&m.index);
  return m;
}

struct TrackState {
  TrackRecord record;
  RealVector reference;
  int low_overlap_run = 0;
  bool active = true;
};

}  // namespace

std::vector<ParamPoint> ParameterPath::points() const {
  std::vector<ParamPoint> out;
  for (const auto& g : grid_points(*this, 1)) out.push_back(g.p);
  return out;
}

ParameterPath ParameterPath::truncated_at_t(double t_stop) const {
  ParameterPath out{name, {}};
  for (const auto& seg : segments) {
    if (seg.end.t < t_stop - kGridTolerance || seg.fine_step.t == 0.0) {
      out.segments.push_back(seg);
      if (seg.end.t >= t_stop - kGridTolerance) break;
      continue;
    }
    if (seg.start.t >= t_stop - kGridTolerance) break;
    PathSegment cut = seg;
    const long n = std::lround(std::ceil((t_stop - seg.start.t) / seg.fine_step.t - 1e-9));
    const double frac = static_cast<double>(n) / static_cast<double>(segment_steps(seg));
    cut.end = {seg.start.t + static_cast<double>(n) * seg.fine_step.t,
               seg.start.h + frac * (seg.end.h - seg.start.h)};
    out.segments.push_back(cut);
    break;
  }
  return out;
}

ParameterPath preset_path(const std::string& name) {
  if (name == "path0" || name == "0") {
    return {"path0", {{{0.003, 0.001}, {0.45, 0.15}, {0.003, 0.001}, {0.03, 0.01}}}};
  }
  if (name == "pathI" || name == "I") {
    return {"pathI",
            {{{0.0002, 0.001}, {0.1, 0.5}, {0.0002, 0.001}, {0.002, 0.01}},
             {{0.1, 0.5}, {0.3, 0.5}, {0.001, 0.0}, {0.01, 0.0}}}};
  }
  throw Error(ErrorCode::unknown_name, "unknown path '" + name + "' (expected path0 or pathI)");
}

std::vector<TrackRecord> track_many(const ParameterPath& path, const std::vector<ScarLabel>& initial,
                                    int length, const TrackingPolicy& policy) {
  auto basis = std::make_shared<const SectorBasis>(enumerate_sector(length, policy.sector));
  if (!basis->is_real()) {
    throw Error(ErrorCode::invalid_sector, "tracking requires a real sector (k = 0 or k = L/2)");
  }
  SolutionCache cache(grid_points(path, policy.lookahead), basis, policy.mu);
  const auto& grid = cache.grid();
  if (grid.empty()) throw Error(ErrorCode::invalid_parameters, "empty parameter path");

  auto make_entry = [&](std::size_t i, const RealEigenSolution& sol, const BestMatch& m) {
    TrackEntry e;
    e.t = grid[i].p.t;
    e.h = grid[i].p.h;
    e.energy = sol.energies[m.index];
    e.entropy = entanglement_entropy(sector_to_full(RealVector(sol.vectors.col(m.index)), *basis), length);
    e.overlap = std::min(m.overlap, 1.0);
    e.eigenindex = static_cast<std::size_t>(m.index);
    return e;
  };

  std::vector<TrackState> tracks;
  tracks.reserve(initial.size());
  {
    const auto& sol0 = cache.at(0);
    for (const auto& label : initial) {
      TrackState st;
      st.record.label = label;
      st.record.path_name = path.name;
      st.record.length = length;
      RealVector exact = full_to_sector(scar_state(label, length).state, *basis);
      if (exact.norm() < 1e-8) {
        throw Error(ErrorCode::invalid_sector, "tower state has no weight in the tracking sector");
      }
      exact.normalize();
      const BestMatch m = best_match(sol0, exact);
      TrackEntry e = make_entry(0, sol0, m);
      e.accepted = true;
      st.record.entries.push_back(e);
      st.reference = sol0.vectors.col(m.index);
      tracks.push_back(std::move(st));
    }
  }

  for (std::size_t i = 1; i < grid.size(); ++i) {
    cache.release_before(i);
    const auto& sol = cache.at(i);
    for (auto& st : tracks) {
      if (!st.active) continue;
      const BestMatch m = best_match(sol, st.reference);
      TrackEntry e = make_entry(i, sol, m);
      RealVector candidate = sol.vectors.col(m.index);

      bool accept = !policy.diabatic;
      if (policy.diabatic && m.overlap >= policy.accept_threshold) {
        accept = true;
        for (int j = 1; j <= policy.lookahead; ++j) {
          const std::size_t ahead = i + static_cast<std::size_t>(j * grid[i].stride);
          if (ahead >= grid.size()) break;
          if (best_match(cache.at(ahead), candidate).index != m.index) {
            accept = false;
            break;
          }
        }
      }
      e.accepted = accept;
      e.crossing = !accept;
      if (accept) {
        if (candidate.dot(st.reference) < 0.0) candidate = -candidate;
        st.reference = std::move(candidate);
      }

      st.low_overlap_run = m.overlap < policy.accept_threshold ? st.low_overlap_run + 1 : 0;
      st.record.entries.push_back(e);
      if (st.low_overlap_run > policy.patience) {
        st.record.lost_at = st.record.entries.size() - 1;
        st.active = false;
      }
    }
    if (std::none_of(tracks.begin(), tracks.end(), [](const TrackState& s) { return s.active; })) break;
  }

  std::vector<TrackRecord> out;
  out.reserve(tracks.size());
  for (auto& st : tracks) out.push_back(std::move(st.record));
  return out;
}

TrackRecord track(const ParameterPath& path, const ScarLabel& initial, int length,
                  const TrackingPolicy& policy) {
  return std::move(track_many(path, {initial}, length, policy).front());
}

std::optional<std::size_t> entropy_loss_point(const TrackRecord& record, double reference, double fraction,
                                              int sustain) {
  if (sustain < 1) throw Error(ErrorCode::invalid_parameters, "entropy_loss_point: sustain must be >= 1");
  const double level = fraction * reference;
  std::size_t run = 0;
  for (std::size_t i = 0; i < record.entries.size(); ++i) {
    run = record.entries[i].entropy >= level ? run + 1 : 0;
    if (run == static_cast<std::size_t>(sustain)) return i + 1 - run;
  }
  if (run > 0) return record.entries.size() - run;
  return std::nullopt;
}

std::vector<EntropySpike> entropy_spike_report(const TrackRecord& record, const SpikePolicy& policy) {
  std::vector<EntropySpike> spikes;
  const auto& e = record.entries;
  if (e.size() < 3) return spikes;
  const auto n = static_cast<long>(e.size());
  auto window_median = [&](long center, auto value) {
    std::vector<double> vals;
    for (long j = center - policy.half_window; j <= center + policy.half_window; ++j) {
      if (j < 0 || j >= n || j == center) continue;
      vals.push_back(value(e[static_cast<std::size_t>(j)]));
    }
    std::nth_element(vals.begin(), vals.begin() + static_cast<long>(vals.size() / 2), vals.end());
    return vals[vals.size() / 2];
  };
  for (long i = 1; i + 1 < n; ++i) {
    const double s = e[static_cast<std::size_t>(i)].entropy;
    if (s < e[static_cast<std::size_t>(i - 1)].entropy || s < e[static_cast<std::size_t>(i + 1)].entropy) continue;
    const double baseline = window_median(i, [](const TrackEntry& x) { return x.entropy; });
    const double excess = s - baseline;
    if (excess <= policy.threshold) continue;
    const double overlap_base = window_median(i, [](const TrackEntry& x) { return x.overlap; });
    const auto& entry = e[static_cast<std::size_t>(i)];
    spikes.push_back({static_cast<std::size_t>(i), entry.t, entry.h, excess,
                      entry.overlap < overlap_base - policy.dip_threshold});
  }
  return spikes;
}

std::vector<double> manifold_crossings(int dimers, int magnetization, int length, double h_min,
                                       double h_max, double mu) {
  std::set<std::pair<int, int>> manifolds;
  for (std::size_t s = 0; s < hilbert_dimension(length); ++s) {
    const auto cfg = static_cast<SpinConfig>(s);
    int m = 0;
    for (int i = 0; i < length; ++i) m += spin_z(cfg, i);
    manifolds.emplace(dimer_count(cfg, length), m);
  }
  std::vector<double> out;
  for (const auto& [d, m] : manifolds) {
    if (m == magnetization) continue;
    // (mu/2) D - h M equal for both manifolds
    const double h = 0.5 * mu * static_cast<double>(dimers - d) / static_cast<double>(magnetization - m);
    if (h > h_min && h <= h_max) out.push_back(h);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
            out.end());
  return out;
}

}  // namespace z2scars
