#include "kondo/quench.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kondo/errors.hpp"

namespace kondo {

namespace {

constexpr double kMinPeakHeight = 1e-9;

std::size_t sample_count(double t_max, double dt) {
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw InvalidArgument("t_max must be >= 0");
  // Tolerate t_max that is a multiple of dt up to rounding.
  return static_cast<std::size_t>(std::floor(t_max / dt + 1e-9)) + 1;
}

}  // namespace

QuenchProblem::QuenchProblem(const ChainSpec& left, const ChainSpec& right,
                             const SolverConfig& cfg)
    : left_(left),
      right_(right),
      cfg_(cfg),
      basis_(std::make_shared<const SectorBasis>(
          SectorBasis::sector(left.n_sites + right.n_sites, (left.n_sites + right.n_sites) / 2))),
      initial_(basis_) {
  CompositeSpec{left_, right_, 0.0}.validate();
  cfg_.validate();

  const auto prepare = [&](const ChainSpec& chain) {
    auto basis = std::make_shared<const SectorBasis>(
        SectorBasis::sector(chain.n_sites, chain.n_sites / 2));
    const auto h = build_chain_hamiltonian(chain, basis);
    return ground_state(h, cfg_);
  };
  const GroundState gl = prepare(left_);
  const GroundState gr = prepare(right_);
  left_energy_ = gl.energy;
  right_energy_ = gr.energy;
  near_degenerate_ = gl.near_degenerate || gr.near_degenerate;
  initial_ = embed_product_state(gl.state, gr.state, basis_);
  initial_.normalize();
  initial_spin_squared_ = total_spin_squared(initial_);
}

QuenchTrace QuenchProblem::run(double j_m, double t_max, StopRule stop) const {
  const CompositeSpec comp = composite(j_m);
  comp.validate();
  const std::size_t samples = sample_count(t_max, cfg_.dt);
  const auto h = build_composite_hamiltonian(comp, basis_);
  const int n = comp.n_sites();

  QuenchTrace trace;
  trace.spec = comp;
  trace.config = cfg_;
  trace.initial_spin_squared = initial_spin_squared_;
  trace.near_degenerate_ground_state = near_degenerate_;
  trace.times.reserve(samples);
  trace.concurrence.reserve(samples);
  trace.energy.reserve(samples);
  trace.norm.reserve(samples);

  StateVector psi = initial_;
  for (std::size_t k = 0; k < samples; ++k) {
    if (k > 0) psi = evolve_krylov(h, psi, cfg_.dt, cfg_);
    trace.times.push_back(static_cast<double>(k) * cfg_.dt);
    trace.concurrence.push_back(concurrence(reduced_density_matrix(psi, 1, n)));
    trace.energy.push_back(expectation(h, psi));
    trace.norm.push_back(psi.norm());
    if (stop == StopRule::after_first_peak && first_peak_index(trace.concurrence, true)) break;
  }
  return trace;
}

QuenchTrace run_quench(const CompositeSpec& comp, double t_max, const SolverConfig& cfg) {
  comp.validate();
  return QuenchProblem(comp.left, comp.right, cfg).run(comp.j_m, t_max);
}

std::optional<std::size_t> first_peak_index(std::span<const double> values, bool require_drop) {
  if (values.empty()) return std::nullopt;
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) {
      best = i;
    } else if (values[best] > kMinPeakHeight && values[i] <= kPeakDropFraction * values[best]) {
      if (best == 0) return std::nullopt;
      return best;
    }
  }
  if (!require_drop && best > 0 && best + 1 < values.size() &&
      values[best] > values[best + 1] && values[best] > kMinPeakHeight) {
    return best;
  }
  return std::nullopt;
}

Peak extract_peak(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) throw InvalidArgument("extract_peak: length mismatch");
  if (values.empty()) throw NoPeakError("extract_peak: empty trace");
  auto idx = first_peak_index(values, true);
  if (!idx) idx = first_peak_index(values, false);
  if (!idx || *idx == 0 || *idx + 1 >= values.size()) {
    throw NoPeakError("trace has no interior maximum");
  }
  const std::size_t i = *idx;
  // Parabola through the three samples, in coordinates centred on t_i.
  const double u0 = times[i - 1] - times[i];
  const double u2 = times[i + 1] - times[i];
  const double y0 = values[i - 1];
  const double y1 = values[i];
  const double y2 = values[i + 1];
  const double d0 = (y0 - y1) / u0;
  const double d2 = (y2 - y1) / u2;
  const double a = (d2 - d0) / (u2 - u0);
  const double b = d0 - a * u0;
  if (!(a < 0.0)) return {times[i], y1};
  const double u = std::clamp(-b / (2.0 * a), u0, u2);
  return {times[i] + u, y1 + b * u + a * u * u};
}

Peak extract_peak(const QuenchTrace& trace) {
  return extract_peak(trace.times, trace.concurrence);
}

}  // namespace kondo
