#include <cmath>
#include <memory>
#include <random>

#include "doctest.h"
#include "kondo/errors.hpp"
#include "kondo/foursite.hpp"
#include "kondo/model.hpp"
#include "kondo/observables.hpp"
#include "kondo/solver.hpp"
#include "oracle.hpp"

using namespace kondo;

namespace {

std::shared_ptr<const SectorBasis> sector(int n, int up) {
  return std::make_shared<const SectorBasis>(SectorBasis::sector(n, up));
}

StateVector random_state(std::shared_ptr<const SectorBasis> b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  StateVector psi(b);
  for (auto& a : psi.amplitudes()) a = {g(rng), g(rng)};
  psi.normalize();
  return psi;
}

SparseOperator composite_h(int nl, int nr, double jm, double j2 = 0.0) {
  const CompositeSpec comp{tabulated_chain(nl, j2), tabulated_chain(nr, j2), jm};
  return build_composite_hamiltonian(comp, sector(nl + nr, (nl + nr) / 2));
}

}  // namespace

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.krylov_dim = 2;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("two-site ground state is the Pauli singlet") {
  const auto h = build_chain_hamiltonian(ChainSpec{2, 1.0, 0.0, 0.3}, sector(2, 1));
  const auto gs = ground_state(h, {});
  CHECK(gs.energy == doctest::Approx(-0.9).epsilon(1e-12));
  CHECK(total_spin_squared(gs.state) < 1e-12);
}

TEST_CASE("four-site ground energy matches dense eigensolve") {
  const auto h = build_chain_hamiltonian(ChainSpec{4, 1.0, 0.0, 1.0}, sector(4, 2));
  const auto dense = oracle::restrict_to_sector(
      oracle::heisenberg({{1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}}, 4), 4, 2);
  const auto gs = ground_state(h, {});
  CHECK(std::abs(gs.energy - oracle::spectrum(dense)(0)) < 1e-10);
  CHECK(gs.residual < 1e-10);
  CHECK(gs.state.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Kondo chain ground states are singlets") {
  for (int n : {4, 6, 8, 10}) {
    const auto h = build_chain_hamiltonian(tabulated_chain(n), sector(n, n / 2));
    const auto gs = ground_state(h, {});
    CHECK(total_spin_squared(gs.state) < 1e-8);
    CHECK_FALSE(gs.near_degenerate);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.to_dense(), Eigen::EigenvaluesOnly);
    CHECK(std::abs(gs.energy - es.eigenvalues()(0)) < 1e-10);
  }
  // Dimer regime as well.
  const auto h = build_chain_hamiltonian(tabulated_chain(8, 0.42), sector(8, 4));
  CHECK(total_spin_squared(ground_state(h, {}).state) < 1e-8);
}

TEST_CASE("ground state is deterministic for a fixed seed") {
  const auto h = build_chain_hamiltonian(tabulated_chain(10), sector(10, 5));
  const auto a = ground_state(h, {});
  const auto b = ground_state(h, {});
  for (std::size_t i = 0; i < a.state.size(); ++i) CHECK(a.state[i] == b.state[i]);
}

TEST_CASE("ground state reports non-convergence") {
  const auto h = build_chain_hamiltonian(tabulated_chain(10), sector(10, 5));
  SolverConfig cfg;
  cfg.lanczos_max_iter = 3;
  try {
    ground_state(h, cfg);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_residual() > cfg.lanczos_tol);
  }
}

TEST_CASE("Krylov step of zero length is the identity") {
  const auto h = composite_h(4, 4, 0.8);
  const auto psi = random_state(h.basis_ptr(), 3);
  const auto out = evolve_krylov(h, psi, 0.0, {});
  for (std::size_t i = 0; i < psi.size(); ++i) CHECK(out[i] == psi[i]);
}

TEST_CASE("eigenvectors only acquire a phase") {
  const auto h = composite_h(4, 4, 0.8);
  const auto gs = ground_state(h, {});
  for (double dt : {0.05, 0.7, 3.0}) {
    const auto out = evolve_krylov(h, gs.state, dt, {});
    const Complex phase = std::polar(1.0, -gs.energy * dt);
    double err = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) err = std::max(err, std::abs(out[i] - phase * gs.state[i]));
    CHECK(err < 1e-10);
  }
}

TEST_CASE("Krylov evolution of an N=10 composite matches the dense oracle") {
  const auto h = composite_h(6, 4, 0.9);
  const auto psi0 = random_state(h.basis_ptr(), 11);
  SolverConfig cfg;
  StateVector psi = psi0;
  for (int k = 0; k < 100; ++k) psi = evolve_krylov(h, psi, 0.05, cfg);
  const auto exact = evolve_dense_oracle(h, psi0, 5.0);
  CHECK(overlap_modulus(psi, exact) > 1.0 - 1e-8);
  CHECK(std::abs(psi.norm() - 1.0) < 1e-10 * 100);
}

TEST_CASE("single long Krylov step uses substeps") {
  const auto h = composite_h(6, 6, 1.0);
  const auto psi0 = random_state(h.basis_ptr(), 5);
  SolverConfig cfg;
  cfg.krylov_dim = 8;
  const auto out = evolve_krylov(h, psi0, 10.0, cfg);
  CHECK(overlap_modulus(out, evolve_dense_oracle(h, psi0, 10.0)) > 1.0 - 1e-8);
}

TEST_CASE("Krylov propagation fails loudly when the tolerance is unreachable") {
  const auto h = composite_h(6, 6, 1.0);
  const auto psi0 = random_state(h.basis_ptr(), 5);
  SolverConfig cfg;
  cfg.step_tol = 1e-300;
  CHECK_THROWS_AS(evolve_krylov(h, psi0, 1.0, cfg), PropagationError);
}

TEST_CASE("Krylov and dense agree at t = 10 on small sectors (property)") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> jm(0.3, 1.6);
  for (auto [nl, nr] : {std::pair{4, 4}, std::pair{6, 4}, std::pair{6, 6}, std::pair{8, 4}}) {
    for (double j2 : {0.0, 0.42}) {
      const auto h = composite_h(nl, nr, jm(rng), j2);
      const auto psi0 = random_state(h.basis_ptr(), rng());
      StateVector psi = psi0;
      for (int k = 0; k < 200; ++k) psi = evolve_krylov(h, psi, 0.05, {});
      CHECK(overlap_modulus(psi, evolve_dense_oracle(h, psi0, 10.0)) > 1.0 - 1e-8);
    }
  }
}

TEST_CASE("complex field operator evolution matches a dense complex oracle") {
  const int n = 6;
  const auto full = std::make_shared<const SectorBasis>(SectorBasis::full(n));
  const CompositeSpec comp{tabulated_chain(4), ChainSpec{2, 1.0, 0.0, 0.4}, 0.8};
  const auto bonds = composite_bonds(comp);
  const std::vector<SiteField> fields{{1, {0.1, -0.2, 0.05}}, {3, {0.0, 0.3, 0.0}}, {6, {-0.1, 0.0, 0.2}}};
  const auto h = build_exchange_field_operator(bonds, fields, full);
  CHECK(h.is_hermitian());

  std::vector<oracle::DenseBond> dense_bonds;
  for (const auto& b : bonds) dense_bonds.push_back({b.site_a, b.site_b, b.coupling});
  oracle::Mat hd = oracle::heisenberg(dense_bonds, n);
  for (const auto& f : fields) {
    hd += f.h[0] * oracle::site_operator(oracle::pauli('x'), f.site, n) +
          f.h[1] * oracle::site_operator(oracle::pauli('y'), f.site, n) +
          f.h[2] * oracle::site_operator(oracle::pauli('z'), f.site, n);
  }
  CHECK((h.to_dense() - hd).cwiseAbs().maxCoeff() < 1e-14);

  const auto psi0 = random_state(full, 9);
  StateVector psi = psi0;
  for (int k = 0; k < 40; ++k) psi = evolve_krylov(h, psi, 0.1, {});
  const Eigen::Map<const Eigen::VectorXcd> v0(psi0.amplitudes().data(), 64);
  const Eigen::VectorXcd exact = oracle::evolve(hd, v0, 4.0);
  const Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), 64);
  CHECK(std::abs(exact.dot(v)) > 1.0 - 1e-8);
}

TEST_CASE("fields are rejected outside the full register") {
  const std::vector<SiteField> fields{{1, {0.1, 0.0, 0.0}}};
  CHECK_THROWS_AS(build_exchange_field_operator({}, fields, sector(4, 2)), InvalidArgument);
}

TEST_CASE("dense oracle") {
  const auto h = composite_h(4, 4, 0.8);
  const auto psi = random_state(h.basis_ptr(), 1);
  const auto same = evolve_dense_oracle(h, psi, 0.0);
  for (std::size_t i = 0; i < psi.size(); ++i) CHECK(std::abs(same[i] - psi[i]) < 1e-13);

  const double e0 = expectation(h, psi);
  const DensePropagator prop(h);
  for (double t : {0.5, 3.0, 17.0}) CHECK(std::abs(expectation(h, prop.evolve(psi, t)) - e0) < 1e-10);

  const auto big = composite_h(10, 8, 0.8);  // dimension 48620
  CHECK_THROWS_AS(DensePropagator{big}, InvalidArgument);
}

TEST_CASE("expectation values") {
  const auto h2 = build_chain_hamiltonian(ChainSpec{2, 1.0, 0.0, 1.0}, sector(2, 1));
  const double r = 1.0 / std::sqrt(2.0);
  StateVector singlet(h2.basis_ptr(), {r, -r});
  CHECK(expectation(h2, singlet) == doctest::Approx(-3.0).epsilon(1e-14));

  const auto h = build_chain_hamiltonian(tabulated_chain(8), sector(8, 4));
  const auto gs = ground_state(h, {});
  CHECK(expectation(h, gs.state) == doctest::Approx(gs.energy).epsilon(1e-12));

  CHECK_THROWS_AS(expectation(h, singlet), InvalidArgument);
}
