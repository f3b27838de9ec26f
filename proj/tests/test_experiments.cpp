#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "kondo/errors.hpp"
#include "kondo/foursite.hpp"
#include "kondo/model.hpp"
#include "kondo/noise.hpp"
#include "kondo/optimize.hpp"
#include "kondo/quench.hpp"
#include "kondo/router.hpp"
#include "kondo/scaling.hpp"

using namespace kondo;

namespace {

const ChainSpec kPair{2, 1.0, 0.0, 1.0};

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("resonant 2+2 quench follows the closed form") {
  SolverConfig cfg;
  cfg.dt = 0.01;
  const auto trace = run_quench({kPair, kPair, 2.0}, 3.0, cfg);
  REQUIRE(trace.size() == 301);
  double err = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    err = std::max(err, std::abs(trace.concurrence[i] -
                                 foursite::four_spin_concurrence(2.0, trace.times[i])));
  }
  CHECK(err < 1e-8);
  CHECK(trace.initial_spin_squared < 1e-12);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    CHECK(std::abs(trace.energy[i] - trace.energy[0]) < 1e-9);
    CHECK(std::abs(trace.norm[i] - 1.0) < 1e-9);
  }
}

TEST_CASE("uncoupled quench is stationary") {
  const auto trace = run_quench({tabulated_chain(4), tabulated_chain(4), 0.0}, 2.0, {});
  for (double c : trace.concurrence) CHECK(c < 1e-12);
  CHECK(max_abs_diff(trace.energy, std::vector<double>(trace.size(), trace.energy[0])) < 1e-10);
}

TEST_CASE("sample grid") {
  SolverConfig cfg;
  cfg.dt = 0.1;
  const auto trace = run_quench({kPair, kPair, 1.0}, 1.0, cfg);
  CHECK(trace.size() == 11);
  CHECK(trace.times.back() == doctest::Approx(1.0));
  CHECK_THROWS_AS(run_quench({kPair, kPair, 1.0}, -1.0, cfg), InvalidArgument);
}

TEST_CASE("peak extraction") {
  std::vector<double> t, e;
  for (int i = 0; i <= 300; ++i) {
    t.push_back(0.01 * i);
    e.push_back(foursite::four_spin_concurrence(2.0, t.back()));
  }
  const auto p = extract_peak(t, e);
  CHECK(p.t_star == doctest::Approx(std::numbers::pi / 8.0).epsilon(1e-3));
  CHECK(p.e_max == doctest::Approx(1.0).epsilon(1e-3));

  const std::vector<double> zero(t.size(), 0.0);
  CHECK_THROWS_AS(extract_peak(t, zero), NoPeakError);

  std::vector<double> rising(t.begin(), t.end());
  CHECK_THROWS_AS(extract_peak(t, rising), NoPeakError);

  // A shoulder that never falls to half its height is not the first peak.
  std::vector<double> bumpy;
  for (double x : t) {
    bumpy.push_back(0.4 * std::exp(-(x - 0.5) * (x - 0.5) / 0.02) +
                    0.8 * std::exp(-(x - 1.5) * (x - 1.5) / 0.05) + 0.4 * std::tanh(5 * x));
  }
  const auto q = extract_peak(t, bumpy);
  CHECK(q.t_star == doctest::Approx(1.5).epsilon(0.01));

  // Parabolic refinement recovers an off-grid vertex exactly.
  std::vector<double> para;
  for (double x : t) para.push_back(1.0 - (x - 1.234) * (x - 1.234));
  const auto r = extract_peak(t, para);
  CHECK(r.t_star == doctest::Approx(1.234).epsilon(1e-10));
  CHECK(r.e_max == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(extract_peak(std::vector<double>{0.0, 1.0}, std::vector<double>{0.0}),
                  InvalidArgument);
}

TEST_CASE("early stop keeps the first peak") {
  const QuenchProblem problem(tabulated_chain(6), tabulated_chain(6), {});
  const auto full = problem.run(1.0, 12.0);
  const auto early = problem.run(1.0, 12.0, StopRule::after_first_peak);
  CHECK(early.size() < full.size());
  const auto a = extract_peak(full);
  const auto b = extract_peak(early);
  CHECK(a.t_star == doctest::Approx(b.t_star).epsilon(1e-12));
  CHECK(a.e_max == doctest::Approx(b.e_max).epsilon(1e-12));
}

TEST_CASE("four-spin optimisation selects the resonant coupling") {
  const auto grid = linear_grid(1.5, 2.5, 0.05);
  const auto res = optimize_jm(kPair, kPair, grid, 3.0, {});
  CHECK(res.j_m_opt == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(res.e_max == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(res.t_star == doctest::Approx(std::numbers::pi / 8.0).epsilon(1e-3));
  CHECK(res.grid.size() == grid.size());
}

TEST_CASE("optimisation edge cases") {
  const std::vector<double> single{1.0};
  const auto one = optimize_jm(tabulated_chain(4), tabulated_chain(4), single, 12.0, {});
  CHECK(one.j_m_opt == 1.0);

  const std::vector<double> descending{1.0, 0.8};
  CHECK_THROWS_AS(optimize_jm(kPair, kPair, descending, 3.0, {}), InvalidArgument);
  const std::vector<double> zero{0.0};
  CHECK_THROWS_AS(optimize_jm(kPair, kPair, zero, 3.0, {}), OptimizationError);
  CHECK_THROWS_AS(optimize_jm(kPair, kPair, std::vector<double>{}, 3.0, {}), InvalidArgument);

  const auto g = linear_grid(0.4, 1.6, 0.02);
  CHECK(g.size() == 61);
  CHECK(g.back() == 1.6);
  CHECK(default_jm_grid() == g);
  CHECK_THROWS_AS(linear_grid(1.0, 0.5, 0.1), InvalidArgument);
}

TEST_CASE("thread count does not change the optimum") {
  const QuenchProblem problem(tabulated_chain(6), tabulated_chain(6), {});
  const auto grid = linear_grid(0.6, 1.2, 0.1);
  const auto a = optimize_jm(problem, grid, 12.0, Execution{1});
  const auto b = optimize_jm(problem, grid, 12.0, Execution{3});
  CHECK(a.j_m_opt == b.j_m_opt);
  CHECK(a.e_max == b.e_max);
  CHECK(a.t_star == b.t_star);
}

TEST_CASE("refined search agrees with a fine grid") {
  const QuenchProblem problem(tabulated_chain(6), tabulated_chain(6), {});
  const auto fine = optimize_jm(problem, linear_grid(0.4, 1.6, 0.01), 12.0);
  const auto refined = optimize_jm_refined(problem, {}, 12.0);
  CHECK(refined.j_m_opt == doctest::Approx(fine.j_m_opt).epsilon(1e-9));
  CHECK(refined.e_max == doctest::Approx(fine.e_max).epsilon(1e-12));
  for (std::size_t i = 1; i < refined.grid.size(); ++i) {
    CHECK(refined.grid[i - 1].j_m < refined.grid[i].j_m);
  }
}

TEST_CASE("line and Phi fits") {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{3, 5, 7, 9};
  const auto f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_line(std::vector<double>{1, 1}, std::vector<double>{0, 1}), InvalidArgument);

  std::vector<ScalingSample> samples;
  for (int n : {8, 12, 16, 20}) {
    const double l = std::log(n / 2.0);
    const double jp = impurity_coupling_for(n / 2);
    samples.push_back({n, (0.3 * l * l + 0.5) * 2.0 * jp, jp, jp});
  }
  const auto phi = fit_phi_scaling(samples, 0.8);
  CHECK(phi.slope == doctest::Approx(0.3));
  CHECK(phi.intercept == doctest::Approx(0.5));
  CHECK(phi.r_squared == doctest::Approx(1.0));
  REQUIRE(phi.j_inf);
  CHECK(*phi.j_inf == doctest::Approx(0.3 * 0.64));
  CHECK(phi.points.size() == 4);

  CHECK_THROWS_AS(fit_phi_scaling(std::span(samples).first(2)), InvalidArgument);
}

TEST_CASE("alpha diagnostic uses every tabulated coupling") {
  const auto alpha = alpha_from_table();
  CHECK(alpha.size() == 18);
  for (const auto& a : alpha) {
    CHECK(a.alpha == doctest::Approx(std::sqrt(impurity_coupling_for(a.n_sites)) *
                                     std::log(a.n_sites - 1.0)));
  }
}

TEST_CASE("asymmetric sweep orders by split ratio") {
  SweepOptions opts;
  opts.jm_grid = linear_grid(0.6, 1.4, 0.2);
  const std::vector<int> splits{6, 4};
  const auto rows = asymmetric_sweep(10, splits, {}, opts);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n_left == 4);
  CHECK(rows[0].n_right == 6);
  CHECK(rows[0].ratio == doctest::Approx(0.4));
  CHECK(rows[1].ratio == doctest::Approx(0.6));
  const std::vector<int> odd{5};
  CHECK_THROWS_AS(asymmetric_sweep(10, odd, {}, opts), InvalidArgument);
}

TEST_CASE("regime comparison records per-cell results") {
  SweepOptions opts;
  opts.jm_grid = linear_grid(0.6, 1.4, 0.2);
  const std::vector<int> ns{8};
  const auto rows = regime_comparison(ns, 0.0, 0.42, {}, opts);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].kondo.result.has_value());
  CHECK(rows[0].dimer.result.has_value());
  CHECK(rows[0].dimer.result->left.j2 == 0.42);
  const std::vector<int> bad{10};
  const auto bad_rows = regime_comparison(bad, 0.0, 0.42, {}, opts);
  CHECK_FALSE(bad_rows[0].kondo.result.has_value());
  CHECK_FALSE(bad_rows[0].kondo.error.empty());
}

TEST_CASE("dephasing at zero rate reproduces the noiseless trace") {
  const CompositeSpec comp{tabulated_chain(4), tabulated_chain(4), 0.9};
  const auto clean = run_quench(comp, 4.0, {});
  NoiseSpec noise;
  noise.gamma = 0.0;
  noise.n_samples = 8;
  const auto noisy = run_dephasing(comp, noise, 4.0, {});
  CHECK(max_abs_diff(clean.concurrence, noisy.concurrence) < 1e-14);
}

TEST_CASE("dephasing on the four-spin register") {
  const CompositeSpec comp{kPair, kPair, 2.0};
  NoiseSpec noise;
  noise.gamma = 0.05;
  noise.n_samples = 64;
  noise.seed = 5;
  SolverConfig cfg;
  cfg.dt = 0.02;
  const auto a = run_dephasing(comp, noise, 1.0, cfg, Execution{1});
  const auto b = run_dephasing(comp, noise, 1.0, cfg, Execution{2});
  CHECK(max_abs_diff(a.concurrence, b.concurrence) == 0.0);
  const auto clean = run_quench(comp, 1.0, cfg);
  CHECK(extract_peak(a).e_max <= extract_peak(clean).e_max + 1e-12);
  for (double n : a.norm) CHECK(n == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("dephasing trajectories match the Lindblad master equation") {
  // 4+2 composite in its 20-dimensional sector; sigma^z jumps keep the sector.
  const CompositeSpec comp{tabulated_chain(4), ChainSpec{2, 1.0, 0.0, 0.4}, 0.8};
  const double gamma = 0.1;
  const double t_max = 3.0;
  SolverConfig cfg;
  cfg.dt = 0.1;
  NoiseSpec noise;
  noise.gamma = gamma;
  noise.n_samples = 4000;
  noise.seed = 11;
  const auto traj = run_dephasing(comp, noise, t_max, cfg);

  const QuenchProblem problem(comp.left, comp.right, cfg);
  const auto& basis = problem.basis();
  const Eigen::MatrixXd h = build_composite_hamiltonian(comp, basis).to_dense();
  const auto dim = static_cast<Eigen::Index>(basis->size());
  const int n = comp.n_sites();
  std::vector<Eigen::VectorXd> z;
  for (int site = 1; site <= n; ++site) {
    Eigen::VectorXd d(dim);
    for (Eigen::Index i = 0; i < dim; ++i) d(i) = (basis->config(i) & site_bit(site)) ? 1.0 : -1.0;
    z.push_back(d);
  }
  const auto rhs = [&](const Eigen::MatrixXcd& rho) {
    const Complex i1{0.0, 1.0};
    Eigen::MatrixXcd out = -i1 * (h * rho - rho * h);
    for (const auto& d : z) out += gamma * (d.asDiagonal() * rho * d.asDiagonal() - rho);
    return out;
  };
  const auto boundary = [&](const Eigen::MatrixXcd& rho) {
    Eigen::Matrix4cd red = Eigen::Matrix4cd::Zero();
    const Config ends = site_bit(1) | site_bit(n);
    for (Eigen::Index a = 0; a < dim; ++a) {
      for (Eigen::Index b = 0; b < dim; ++b) {
        const Config ca = basis->config(a), cb = basis->config(b);
        if ((ca & ~ends) != (cb & ~ends)) continue;
        const auto idx = [&](Config c) { return ((c & site_bit(1)) ? 2 : 0) + ((c & site_bit(n)) ? 1 : 0); };
        red(idx(ca), idx(cb)) += rho(a, b);
      }
    }
    return concurrence(TwoQubitDensityMatrix(red));
  };

  const Eigen::Map<const Eigen::VectorXcd> v(problem.initial_state().amplitudes().data(), dim);
  Eigen::MatrixXcd rho = v * v.adjoint();
  const int sub = 100;
  const double step = cfg.dt / sub;
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (k > 0) {
      for (int s = 0; s < sub; ++s) {
        const Eigen::MatrixXcd k1 = rhs(rho);
        const Eigen::MatrixXcd k2 = rhs(rho + 0.5 * step * k1);
        const Eigen::MatrixXcd k3 = rhs(rho + 0.5 * step * k2);
        const Eigen::MatrixXcd k4 = rhs(rho + step * k3);
        rho += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
    }
    worst = std::max(worst, std::abs(boundary(rho) - traj.concurrence[k]));
  }
  CHECK(worst < 0.03);
}

TEST_CASE("random field at zero magnitude reproduces the noiseless trace") {
  const CompositeSpec comp{tabulated_chain(4), tabulated_chain(4), 0.9};
  const auto clean = run_quench(comp, 4.0, {});
  NoiseSpec noise;
  noise.kind = NoiseKind::random_field;
  noise.h_mag = 0.0;
  noise.n_samples = 3;
  const auto noisy = run_random_field(comp, noise, 4.0, {});
  CHECK(max_abs_diff(clean.concurrence, noisy.concurrence) < 1e-14);

  // Gaussian magnitudes at zero width go through the full-register path.
  noise.gaussian_magnitude = true;
  noise.h_mag = 1e-300;
  const auto full = run_random_field(comp, noise, 4.0, {});
  CHECK(max_abs_diff(clean.concurrence, full.concurrence) < 1e-10);
}

TEST_CASE("random field weakens the peak and is reproducible") {
  const CompositeSpec comp{tabulated_chain(4), tabulated_chain(4), 0.9};
  NoiseSpec noise;
  noise.kind = NoiseKind::random_field;
  noise.h_mag = 0.3;
  noise.n_samples = 6;
  noise.seed = 42;
  const auto a = run_random_field(comp, noise, 6.0, {}, Execution{1});
  const auto b = run_random_field(comp, noise, 6.0, {}, Execution{2});
  CHECK(max_abs_diff(a.concurrence, b.concurrence) == 0.0);
  const auto clean = run_quench(comp, 6.0, {});
  CHECK(extract_peak(a).e_max < extract_peak(clean).e_max);
}

TEST_CASE("noise argument checks") {
  const CompositeSpec big{tabulated_chain(8), tabulated_chain(8), 1.0};
  NoiseSpec noise;
  noise.kind = NoiseKind::random_field;
  noise.h_mag = 0.1;
  CHECK_THROWS_AS(run_random_field(big, noise, 1.0, {}), CapacityError);

  const CompositeSpec small{kPair, kPair, 2.0};
  noise.kind = NoiseKind::dephasing;
  CHECK_THROWS_AS(run_random_field(small, noise, 1.0, {}), InvalidArgument);
  noise.kind = NoiseKind::random_field;
  CHECK_THROWS_AS(run_dephasing(small, noise, 1.0, {}), InvalidArgument);

  NoiseSpec bad;
  bad.gamma = -1.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = {};
  bad.n_samples = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("router pairs are independent") {
  RouterPlan plan;
  plan.nodes = {{"A", tabulated_chain(4)}, {"B", tabulated_chain(4)}, {"C", kPair}, {"D", kPair}};
  plan.pairs = {{"A", "B", {0.9}}, {"C", "D", {2.0}}};
  const auto routed = route(plan, 6.0, {});
  REQUIRE(routed.size() == 2);

  const auto alone = run_quench({tabulated_chain(4), tabulated_chain(4), 0.9}, 6.0, {});
  const auto& ab = routed.at({"A", "B"});
  CHECK(ab.e_max == doctest::Approx(extract_peak(alone).e_max).epsilon(1e-12));
  CHECK(routed.at({"C", "D"}).e_max == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("router rejects a node used twice") {
  RouterPlan plan;
  plan.nodes = {{"A", kPair}, {"B", kPair}, {"C", kPair}};
  plan.pairs = {{"A", "B", {2.0}}, {"B", "C", {2.0}}};
  try {
    plan.validate();
    FAIL("expected ExclusivityError");
  } catch (const ExclusivityError& e) {
    CHECK(e.node() == "B");
  }

  plan.pairs = {{"A", "Z", {2.0}}};
  CHECK_THROWS_AS(plan.validate(), InvalidArgument);
  plan.pairs = {{"A", "A", {2.0}}};
  CHECK_THROWS_AS(plan.validate(), InvalidArgument);
  plan.pairs = {{"A", "B", {}}};
  CHECK_THROWS_AS(plan.validate(), InvalidArgument);
  plan.nodes.push_back({"A", kPair});
  plan.pairs = {{"A", "B", {2.0}}};
  CHECK_THROWS_AS(plan.validate(), InvalidArgument);
}
