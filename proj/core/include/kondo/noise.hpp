#pragma once

#include <cstdint>

#include "kondo/parallel.hpp"
#include "kondo/quench.hpp"

namespace kondo {

enum class NoiseKind { dephasing, random_field };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::dephasing;
  /// Lindblad rate per site for jump operators sigma^z_i.
  double gamma = 0.0;
  /// Field magnitude per site.
  double h_mag = 0.0;
  /// Draw |h_i| from a Gaussian of standard deviation h_mag instead of
  /// fixing it.
  bool gaussian_magnitude = false;
  int n_samples = 1;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Largest register evolved in the full 2^N space.
inline constexpr int kMaxFullSpaceSites = 14;

/// Trajectory average under sigma^z dephasing at rate gamma on every site.
///
/// Since sum_i L_i^dag L_i = N gamma is a multiple of the identity, the
/// no-jump evolution is the unitary one and jumps form a Poisson process of
/// rate N gamma at uniformly chosen sites, so trajectories are sampled
/// exactly. Only trajectories with at least one jump are integrated; the
/// averaged boundary density matrix is rho_0 + sum_k (rho_k - rho_0) / n,
/// which is rho_0 bit for bit when no jumps occur.
QuenchTrace run_dephasing(const CompositeSpec& comp, const NoiseSpec& noise,
                          double t_max, const SolverConfig& cfg,
                          const Execution& exec = {});

/// Disorder average over static fields h_i . sigma_i of magnitude h_mag and
/// uniformly random direction, each realisation evolved in the full 2^N
/// space from the field-free initial state. h_mag = 0 returns the noiseless
/// trace. Throws CapacityError above kMaxFullSpaceSites.
QuenchTrace run_random_field(const CompositeSpec& comp, const NoiseSpec& noise,
                             double t_max, const SolverConfig& cfg,
                             const Execution& exec = {});

}  // namespace kondo
