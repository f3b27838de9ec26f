#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kondo/parallel.hpp"
#include "kondo/quench.hpp"

namespace kondo {

struct GridPoint {
  double j_m = 0.0;
  std::optional<Peak> peak;  // empty when the trace had no peak
  std::string error;
  /// Largest |E(t) - E(0)| / max(|E(0)|, 1) and |norm(t) - 1| along the trace.
  double energy_drift = 0.0;
  double norm_drift = 0.0;
};

struct OptimizationResult {
  double j_m_opt = 0.0;
  double t_star = 0.0;
  double e_max = 0.0;
  std::vector<GridPoint> grid;
  ChainSpec left;
  ChainSpec right;
};

/// 0.40, 0.42, ..., 1.60.
std::vector<double> default_jm_grid();
std::vector<double> linear_grid(double lo, double hi, double step);

/// Runs a quench per grid point and returns the one with the highest first
/// peak; ties go to the smaller j_m. `jm_grid` must be ascending.
/// Throws OptimizationError when no grid point yields a peak.
OptimizationResult optimize_jm(const ChainSpec& left, const ChainSpec& right,
                               std::span<const double> jm_grid, double t_max,
                               const SolverConfig& cfg, const Execution& exec = {});

OptimizationResult optimize_jm(const QuenchProblem& problem,
                               std::span<const double> jm_grid, double t_max,
                               const Execution& exec = {});

/// Coarse scan on [lo, hi] with `coarse_step`, then a scan at `fine_step`
/// over one coarse step either side of the coarse optimum. The result grid
/// holds every evaluated point in ascending order.
struct RefinedSearch {
  double lo = 0.4;
  double hi = 1.6;
  double coarse_step = 0.05;
  double fine_step = 0.01;
};
OptimizationResult optimize_jm_refined(const QuenchProblem& problem,
                                       const RefinedSearch& search, double t_max,
                                       const Execution& exec = {});

}  // namespace kondo
