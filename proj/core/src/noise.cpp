#include "kondo/noise.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "kondo/errors.hpp"

namespace kondo {

void NoiseSpec::validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be >= 0");
  if (!(h_mag >= 0.0) || !std::isfinite(h_mag)) throw InvalidArgument("h_mag must be >= 0");
  if (n_samples < 1) throw InvalidArgument("n_samples must be >= 1");
}

namespace {

// Independent stream per sample index, identical for any thread count.
std::mt19937_64 sample_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::size_t sample_count(double t_max, double dt) {
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw InvalidArgument("t_max must be >= 0");
  return static_cast<std::size_t>(std::floor(t_max / dt + 1e-9)) + 1;
}

QuenchTrace empty_trace(const CompositeSpec& comp, const QuenchProblem& problem) {
  QuenchTrace trace;
  trace.spec = comp;
  trace.config = problem.config();
  trace.initial_spin_squared = problem.initial_spin_squared();
  trace.near_degenerate_ground_state = problem.near_degenerate();
  return trace;
}

struct Jump {
  double time;
  int site;
};

}  // namespace

QuenchTrace run_dephasing(const CompositeSpec& comp, const NoiseSpec& noise, double t_max,
                          const SolverConfig& cfg, const Execution& exec) {
  noise.validate();
  if (noise.kind != NoiseKind::dephasing) throw InvalidArgument("run_dephasing needs a dephasing NoiseSpec");
  comp.validate();
  const QuenchProblem problem(comp.left, comp.right, cfg);
  const auto h = build_composite_hamiltonian(comp, problem.basis());
  const std::size_t samples = sample_count(t_max, cfg.dt);
  const int n = comp.n_sites();

  std::vector<double> times(samples);
  std::vector<StateVector> reference;
  std::vector<Eigen::Matrix4cd> rho0(samples);
  std::vector<double> energy0(samples);
  reference.reserve(samples);
  reference.push_back(problem.initial_state());
  for (std::size_t k = 0; k < samples; ++k) {
    if (k > 0) reference.push_back(evolve_krylov(h, reference.back(), cfg.dt, cfg));
    times[k] = static_cast<double>(k) * cfg.dt;
    rho0[k] = reduced_density_matrix(reference[k], 1, n).matrix();
    energy0[k] = expectation(h, reference[k]);
  }

  const double rate = n * noise.gamma;
  struct Deviation {
    std::size_t first = 0;  // sample index of the first affected entry
    std::vector<Eigen::Matrix4cd> rho;
    std::vector<double> energy;
  };
  const auto n_traj = static_cast<std::size_t>(noise.n_samples);
  std::vector<Deviation> deviations(n_traj);

  if (rate > 0.0 && samples > 1) {
    parallel_for(n_traj, exec, [&](std::size_t s) {
      auto rng = sample_rng(noise.seed, s);
      std::uniform_real_distribution<double> uni(0.0, 1.0);
      std::uniform_int_distribution<int> pick(1, n);
      std::vector<Jump> jumps;
      for (double t = 0.0;;) {
        t += -std::log1p(-uni(rng)) / rate;
        if (t > times.back()) break;
        jumps.push_back({t, pick(rng)});
      }
      if (jumps.empty()) return;

      auto k0 = static_cast<std::size_t>(std::floor(jumps.front().time / cfg.dt));
      k0 = std::min(k0, samples - 1);
      while (k0 > 0 && times[k0] > jumps.front().time) --k0;
      StateVector psi = reference[k0];
      double now = times[k0];
      std::size_t next = 0;
      Deviation& dev = deviations[s];
      dev.first = k0 + 1;
      for (std::size_t k = k0 + 1; k < samples; ++k) {
        while (next < jumps.size() && jumps[next].time <= times[k]) {
          psi = evolve_krylov(h, psi, jumps[next].time - now, cfg);
          now = jumps[next].time;
          apply_sigma_z(psi, jumps[next].site);
          ++next;
        }
        psi = evolve_krylov(h, psi, times[k] - now, cfg);
        now = times[k];
        dev.rho.push_back(reduced_density_matrix(psi, 1, n).matrix() - rho0[k]);
        dev.energy.push_back(expectation(h, psi) - energy0[k]);
      }
    });
  }

  std::vector<Eigen::Matrix4cd> rho = rho0;
  std::vector<double> energy = energy0;
  const double weight = 1.0 / static_cast<double>(n_traj);
  for (const auto& dev : deviations) {
    for (std::size_t j = 0; j < dev.rho.size(); ++j) {
      rho[dev.first + j] += weight * dev.rho[j];
      energy[dev.first + j] += weight * dev.energy[j];
    }
  }

  QuenchTrace trace = empty_trace(comp, problem);
  for (std::size_t k = 0; k < samples; ++k) {
    trace.times.push_back(times[k]);
    trace.concurrence.push_back(concurrence(TwoQubitDensityMatrix(rho[k])));
    trace.energy.push_back(energy[k]);
    trace.norm.push_back(std::real(rho[k].trace()));
  }
  return trace;
}

QuenchTrace run_random_field(const CompositeSpec& comp, const NoiseSpec& noise, double t_max,
                             const SolverConfig& cfg, const Execution& exec) {
  noise.validate();
  if (noise.kind != NoiseKind::random_field) {
    throw InvalidArgument("run_random_field needs a random_field NoiseSpec");
  }
  comp.validate();
  const int n = comp.n_sites();
  if (n > kMaxFullSpaceSites) {
    throw CapacityError("random-field evolution runs in the full 2^N space; N = " +
                        std::to_string(n) + " exceeds " + std::to_string(kMaxFullSpaceSites));
  }
  const QuenchProblem problem(comp.left, comp.right, cfg);
  if (noise.h_mag == 0.0) return problem.run(comp.j_m, t_max);

  const std::size_t samples = sample_count(t_max, cfg.dt);
  const auto full = std::make_shared<const SectorBasis>(SectorBasis::full(n));
  const StateVector initial = reembed(problem.initial_state(), full);
  const auto bonds = composite_bonds(comp);
  const auto n_real = static_cast<std::size_t>(noise.n_samples);

  struct Realisation {
    std::vector<Eigen::Matrix4cd> rho;
    std::vector<double> energy;
    std::vector<double> norm;
  };
  std::vector<Realisation> runs(n_real);
  parallel_for(n_real, exec, [&](std::size_t s) {
    auto rng = sample_rng(noise.seed, s);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, noise.h_mag);
    std::vector<SiteField> fields;
    for (int site = 1; site <= n; ++site) {
      const double cos_theta = 2.0 * uni(rng) - 1.0;
      const double phi = 2.0 * std::numbers::pi * uni(rng);
      const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
      const double mag = noise.gaussian_magnitude ? std::abs(gauss(rng)) : noise.h_mag;
      fields.push_back({site,
                        {mag * sin_theta * std::cos(phi), mag * sin_theta * std::sin(phi),
                         mag * cos_theta}});
    }
    const auto h = build_exchange_field_operator(bonds, fields, full);
    Realisation& run = runs[s];
    StateVector psi = initial;
    for (std::size_t k = 0; k < samples; ++k) {
      if (k > 0) psi = evolve_krylov(h, psi, cfg.dt, cfg);
      run.rho.push_back(reduced_density_matrix(psi, 1, n).matrix());
      run.energy.push_back(expectation(h, psi));
      run.norm.push_back(psi.norm());
    }
  });

  QuenchTrace trace = empty_trace(comp, problem);
  const double weight = 1.0 / static_cast<double>(n_real);
  for (std::size_t k = 0; k < samples; ++k) {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    double energy = 0.0;
    double norm = 0.0;
    for (const auto& run : runs) {
      rho += run.rho[k];
      energy += run.energy[k];
      norm += run.norm[k];
    }
    trace.times.push_back(static_cast<double>(k) * cfg.dt);
    trace.concurrence.push_back(concurrence(TwoQubitDensityMatrix(rho * weight)));
    trace.energy.push_back(energy * weight);
    trace.norm.push_back(norm * weight);
  }
  return trace;
}

}  // namespace kondo
