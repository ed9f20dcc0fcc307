#pragma once

#include <span>
#include <vector>

#include "z2scars/hamiltonian.hpp"
#include "z2scars/spectral.hpp"

namespace z2scars {

/// F(tau) = |<psi(0)|psi(tau)>|^2 on a time grid (units of 1/mu).
struct FidelityTrace {
  std::vector<double> times;
  std::vector<double> fidelity;
  ModelParams params;
  int length = 0;

  /// Mean over the last half of the window.
  double long_time_mean() const;
};

struct RevivalSummary {
  double long_time_mean = 0.0;
  double max_peak = 0.0;           // largest local maximum after the first decay
  double max_peak_ratio = 0.0;     // max_peak / long_time_mean
  double decay_time = 0.0;         // first time F drops below `decay_level`
  bool decayed = false;
  std::vector<double> peak_times;  // local maxima after the decay
  std::vector<double> peak_values;
};

/// Local maxima of F after it first falls below `decay_level`.
RevivalSummary summarize_revivals(const FidelityTrace& trace, double decay_level = 0.1);

/// Uniform grid 0, step, 2 step, ... up to and including t_max.
std::vector<double> time_grid(double t_max = 50.0, double step = 0.05);

/// (|S_0^2> + |S_2^2>)/sqrt(2) in the full basis.
RealVector prepare_initial(int length);

/// Exact evolution by spectral decomposition:
///   F(tau) = |sum_a |c_a|^2 exp(-i E_a tau)|^2,  c_a = <a|psi(0)>.
/// `state0` holds block coefficients in the solution's basis and must be
/// normalized (within 1e-8).
FidelityTrace evolve_fidelity(const RealVector& state0, const RealEigenSolution& solution,
                              std::span<const double> times);

/// Same, from precomputed weights |c_a|^2 and energies.
std::vector<double> fidelity_from_weights(const RealVector& weights, const RealVector& energies,
                                          std::span<const double> times);

/// One trace per parameter set: builds the (k=0, even) block of the Ising
/// chain, diagonalizes it and evolves prepare_initial(L). Points run on up to
/// `jobs` threads; the output order follows params_list.
std::vector<FidelityTrace> quench_experiment(const std::vector<ModelParams>& params_list, int length,
                                             std::span<const double> times, int jobs = 1);

}  // namespace z2scars
