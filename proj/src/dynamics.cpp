#include "z2scars/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "parallel.hpp"
#include "z2scars/error.hpp"
#include "z2scars/scars.hpp"

namespace z2scars {

double FidelityTrace::long_time_mean() const {
  if (fidelity.empty()) return 0.0;
  const std::size_t start = fidelity.size() / 2;
  double sum = 0.0;
  for (std::size_t i = start; i < fidelity.size(); ++i) sum += fidelity[i];
  return sum / static_cast<double>(fidelity.size() - start);
}

RevivalSummary summarize_revivals(const FidelityTrace& trace, double decay_level) {
  RevivalSummary out;
  out.long_time_mean = trace.long_time_mean();
  const auto& f = trace.fidelity;
  std::size_t start = f.size();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < decay_level) {
      start = i;
      break;
    }
  }
  if (start == f.size()) return out;
  out.decayed = true;
  out.decay_time = trace.times[start];
  for (std::size_t i = std::max<std::size_t>(start, 1); i + 1 < f.size(); ++i) {
    if (f[i] > f[i - 1] && f[i] >= f[i + 1]) {
      out.peak_times.push_back(trace.times[i]);
      out.peak_values.push_back(f[i]);
      out.max_peak = std::max(out.max_peak, f[i]);
    }
  }
  out.max_peak_ratio = out.long_time_mean > 0.0 ? out.max_peak / out.long_time_mean : 0.0;
  return out;
}

std::vector<double> time_grid(double t_max, double step) {
  if (!(step > 0.0) || !(t_max >= 0.0)) {
    throw Error(ErrorCode::invalid_parameters, "time grid needs step > 0 and t_max >= 0");
  }
  const auto n = static_cast<std::size_t>(std::llround(t_max / step));
  std::vector<double> grid(n + 1);
  for (std::size_t i = 0; i <= n; ++i) grid[i] = static_cast<double>(i) * step;
  return grid;
}

RealVector prepare_initial(int length) {
  const RealVector s0 = scar_state({2, 0}, length).state;
  const RealVector s2 = scar_state({2, 2}, length).state;
  return (s0 + s2) / std::sqrt(2.0);
}

std::vector<double> fidelity_from_weights(const RealVector& weights, const RealVector& energies,
                                          std::span<const double> times) {
  std::vector<double> out;
  out.reserve(times.size());
  for (const double tau : times) {
    Complex amp{0.0, 0.0};
    for (Eigen::Index a = 0; a < weights.size(); ++a) {
      if (weights[a] == 0.0) continue;
      amp += weights[a] * std::polar(1.0, -energies[a] * tau);
    }
    out.push_back(std::norm(amp));
  }
  return out;
}

FidelityTrace evolve_fidelity(const RealVector& state0, const RealEigenSolution& solution,
                              std::span<const double> times) {
  if (state0.size() != solution.vectors.rows()) {
    throw Error(ErrorCode::dimension_mismatch,
                "evolve_fidelity: state has " + std::to_string(state0.size()) + " components, block has " +
                    std::to_string(solution.vectors.rows()));
  }
  if (std::abs(state0.norm() - 1.0) > 1e-8) {
    throw Error(ErrorCode::non_normalized_input, "evolve_fidelity: initial state is not normalized");
  }
  const RealVector overlaps = solution.vectors.transpose() * state0;
  const RealVector weights = overlaps.cwiseAbs2();
  FidelityTrace trace;
  trace.times.assign(times.begin(), times.end());
  trace.fidelity = fidelity_from_weights(weights, solution.energies, times);
  trace.length = solution.basis ? solution.basis->length() : 0;
  return trace;
}

std::vector<FidelityTrace> quench_experiment(const std::vector<ModelParams>& params_list, int length,
                                             std::span<const double> times, int jobs) {
  auto basis = std::make_shared<const SectorBasis>(enumerate_sector(length, kZeroMomentumEven));
  const RealVector initial = full_to_sector(prepare_initial(length), *basis);
  std::vector<FidelityTrace> traces(params_list.size());
  parallel_for(params_list.size(), jobs, [&](std::size_t i) {
    const auto solution = diagonalize(build_ising(params_list[i], basis));
    FidelityTrace trace = evolve_fidelity(initial, solution, times);
    trace.params = params_list[i];
    trace.length = length;
    traces[i] = std::move(trace);
  });
  return traces;
}

}  // namespace z2scars
