#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kondo/optimize.hpp"

namespace kondo {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope * x + intercept. Needs >= 2 points with
/// distinct x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct ScalingSample {
  int n_sites = 0;  // N = N_L + N_R
  double j_m_opt = 0.0;
  double j_prime_left = 0.0;
  double j_prime_right = 0.0;
};

struct PhiPoint {
  int n_sites = 0;
  double phi = 0.0;       // j_m_opt / (J'_L + J'_R)
  double log2_half = 0.0;  // log^2(N / 2)
};

struct PhiFit {
  std::vector<PhiPoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  /// Asymptotic junction coupling slope * alpha^2, when alpha is supplied.
  std::optional<double> j_inf;
};

/// Fits Phi(N) against log^2(N/2). Needs >= 3 samples.
PhiFit fit_phi_scaling(std::span<const ScalingSample> samples,
                       std::optional<double> alpha = std::nullopt);

ScalingSample scaling_sample(const OptimizationResult& result);

/// Screening-length constant alpha = sqrt(J') ln(N - 1) for every entry of
/// the impurity-coupling table (diagnostic only; it drifts with N).
struct AlphaEstimate {
  int n_sites;
  double alpha;
};
std::vector<AlphaEstimate> alpha_from_table();

/// How each composite is optimised.
struct SweepOptions {
  std::vector<double> jm_grid = default_jm_grid();
  /// When set, optimize_jm_refined replaces the plain grid scan.
  std::optional<RefinedSearch> refined;
  double t_max = 12.0;
  Execution exec;
};

OptimizationResult optimize_pair(const ChainSpec& left, const ChainSpec& right,
                                 const SolverConfig& cfg, const SweepOptions& opts);

struct SplitRow {
  int n_left = 0;
  int n_right = 0;
  double ratio = 0.0;  // N_L / N
  double j_m_opt = 0.0;
  double t_star = 0.0;
  double e_max = 0.0;
};

/// Optimised peak for each split N_L of a composite of N sites, ordered by
/// N_L / N. Couplings come from the impurity table (NotFound otherwise).
std::vector<SplitRow> asymmetric_sweep(int n_sites, std::span<const int> splits,
                                       const SolverConfig& cfg,
                                       const SweepOptions& opts = {});

struct RegimeCell {
  std::optional<OptimizationResult> result;
  std::string error;
};

struct RegimeRow {
  int n_sites = 0;
  RegimeCell kondo;
  RegimeCell dimer;
};

/// Symmetric composites of every N in `ns`, optimised with the tabulated
/// impurity couplings at both j2 values. Per-run failures are recorded in
/// the cell instead of aborting the table.
std::vector<RegimeRow> regime_comparison(std::span<const int> ns, double j2_kondo,
                                         double j2_dimer, const SolverConfig& cfg,
                                         const SweepOptions& opts = {});

}  // namespace kondo
