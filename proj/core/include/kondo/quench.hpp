#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "kondo/model.hpp"
#include "kondo/observables.hpp"
#include "kondo/solver.hpp"

namespace kondo {

/// Boundary-spin concurrence E(t) after switching on the junction, with the
/// conservation diagnostics recorded at every sample.
struct QuenchTrace {
  std::vector<double> times;
  std::vector<double> concurrence;
  std::vector<double> energy;
  std::vector<double> norm;
  CompositeSpec spec;
  SolverConfig config;
  /// <S^2> of the prepared initial state.
  double initial_spin_squared = 0.0;
  /// Either chain ground state had a Ritz gap below 1e-8.
  bool near_degenerate_ground_state = false;

  std::size_t size() const noexcept { return times.size(); }
};

struct Peak {
  double t_star;
  double e_max;
};

enum class StopRule {
  run_to_end,
  after_first_peak,  // stop once extract_peak's first peak is settled
};

/// Decoupled chain ground states and their product, shared by every junction
/// coupling evaluated for the same pair of chains.
class QuenchProblem {
 public:
  QuenchProblem(const ChainSpec& left, const ChainSpec& right, const SolverConfig& cfg);

  const ChainSpec& left() const noexcept { return left_; }
  const ChainSpec& right() const noexcept { return right_; }
  const SolverConfig& config() const noexcept { return cfg_; }
  const std::shared_ptr<const SectorBasis>& basis() const noexcept { return basis_; }
  const StateVector& initial_state() const noexcept { return initial_; }
  double left_energy() const noexcept { return left_energy_; }
  double right_energy() const noexcept { return right_energy_; }
  double initial_spin_squared() const noexcept { return initial_spin_squared_; }
  bool near_degenerate() const noexcept { return near_degenerate_; }

  CompositeSpec composite(double j_m) const { return {left_, right_, j_m}; }

  QuenchTrace run(double j_m, double t_max, StopRule stop = StopRule::run_to_end) const;

 private:
  ChainSpec left_;
  ChainSpec right_;
  SolverConfig cfg_;
  std::shared_ptr<const SectorBasis> basis_;
  StateVector initial_;
  double left_energy_ = 0.0;
  double right_energy_ = 0.0;
  double initial_spin_squared_ = 0.0;
  bool near_degenerate_ = false;
};

/// Prepares both chain ground states, embeds their product, evolves under
/// the composite Hamiltonian and samples (1, N) concurrence every cfg.dt.
QuenchTrace run_quench(const CompositeSpec& comp, double t_max, const SolverConfig& cfg);

/// Height fraction a trace must fall to, relative to the running maximum,
/// before that maximum is accepted as the first oscillation peak.
inline constexpr double kPeakDropFraction = 0.5;

/// First oscillation peak, refined by a parabola through the three samples
/// around the discrete maximum. The first peak is the running maximum at the
/// moment the trace first falls to kPeakDropFraction of it; if it never does,
/// the global maximum is used provided it is an interior local maximum.
/// Throws NoPeakError otherwise.
Peak extract_peak(std::span<const double> times, std::span<const double> values);
Peak extract_peak(const QuenchTrace& trace);

/// Index at which the first peak is settled (see extract_peak), if any.
std::optional<std::size_t> first_peak_index(std::span<const double> values,
                                            bool require_drop);

}  // namespace kondo
