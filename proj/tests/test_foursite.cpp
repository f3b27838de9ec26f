#include <cmath>
#include <numbers>

#include "doctest.h"
#include "kondo/errors.hpp"
#include "kondo/foursite.hpp"
#include "kondo/observables.hpp"
#include "kondo/solver.hpp"
#include "oracle.hpp"

using namespace kondo;
using namespace kondo::foursite;
using std::numbers::pi;

namespace {

Eigen::VectorXcd as_vector(const StateVector& psi) {
  return Eigen::Map<const Eigen::VectorXcd>(psi.amplitudes().data(),
                                            static_cast<Eigen::Index>(psi.size()));
}

// Dense 16x16 evolution of the four-spin Hamiltonian from the two-singlet
// state, built entirely from the Kronecker oracle.
Eigen::VectorXcd dense_four_spin(double j1p, double j2p, double jm, double t) {
  const auto h = oracle::heisenberg({{1, 2, j1p}, {3, 4, j2p}, {2, 3, jm}}, 4);
  return oracle::evolve(h, as_vector(two_singlet_state()), t);
}

double concurrence_of(const Eigen::Matrix4cd& rho) {
  return concurrence(TwoQubitDensityMatrix(rho));
}

}  // namespace

TEST_CASE("two-singlet state is the explicit tensor product") {
  const auto psi = two_singlet_state();
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(psi.amplitude_of(config_from_ket("0101")).real() == doctest::Approx(0.5));
  CHECK(psi.amplitude_of(config_from_ket("1010")).real() == doctest::Approx(0.5));
  CHECK(psi.amplitude_of(config_from_ket("0110")).real() == doctest::Approx(-0.5));
  CHECK(psi.amplitude_of(config_from_ket("1001")).real() == doctest::Approx(-0.5));
}

TEST_CASE("closed-form state at t = 0 is the two-singlet product") {
  const auto a = four_spin_state(0.8, 0.0);
  const auto b = two_singlet_state();
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-15);
}

TEST_CASE("closed-form state is normalised") {
  for (double jm : {0.1, 0.6, 1.0, 2.3}) {
    for (double t : {0.0, 0.3, 1.7, 9.1}) {
      CHECK(four_spin_state(jm, t).norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("closed-form state at the quarter period") {
  const auto psi = four_spin_state(1.0, pi / 4.0);
  const Complex mi{0.0, -0.5};
  const Complex pi_half{0.0, 0.5};
  CHECK(std::abs(psi.amplitude_of(config_from_ket("0011")) - mi) < 1e-15);
  CHECK(std::abs(psi.amplitude_of(config_from_ket("1100")) - mi) < 1e-15);
  CHECK(std::abs(psi.amplitude_of(config_from_ket("0101")) - pi_half) < 1e-15);
  CHECK(std::abs(psi.amplitude_of(config_from_ket("1010")) - pi_half) < 1e-15);
  CHECK(std::abs(psi.amplitude_of(config_from_ket("1001"))) < 1e-15);
  CHECK(std::abs(psi.amplitude_of(config_from_ket("0110"))) < 1e-15);

  const auto dense = dense_four_spin(0.5, 0.5, 1.0, pi / 4.0);
  CHECK(std::abs(dense.dot(as_vector(psi))) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("closed-form concurrence values") {
  CHECK(four_spin_concurrence(0.7, 0.0) == 0.0);
  CHECK(four_spin_concurrence(0.7, pi / (4 * 0.7)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(four_spin_concurrence(0.7, pi / (2 * 0.7)) == doctest::Approx(0.0));
}

TEST_CASE("closed-form concurrence is periodic in pi / (2 j_m)") {
  for (double jm : {0.3, 1.0, 1.9}) {
    for (double t = 0.0; t < 5.0; t += 0.173) {
      CHECK(four_spin_concurrence(jm, t + pi / (2 * jm)) ==
            doctest::Approx(four_spin_concurrence(jm, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("optimal coupling") {
  const auto a = four_spin_optimal(1.0, 1.0);
  CHECK(a.j_m == 2.0);
  CHECK(a.t_star == doctest::Approx(pi / 8.0));
  const auto b = four_spin_optimal(0.3, 0.3);
  CHECK(b.j_m == doctest::Approx(0.6));
  CHECK(b.t_star == doctest::Approx(pi / 2.4));
  const auto c = four_spin_optimal(0.25, 0.19);
  CHECK(c.j_m == doctest::Approx(0.44));
  CHECK(c.t_star == doctest::Approx(pi / 1.76));
  CHECK_THROWS_AS(four_spin_optimal(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(four_spin_optimal(0.3, -1.0), InvalidArgument);
}

TEST_CASE("resonance flag") {
  CHECK(FourSpinParams{0.3, 0.5, 0.8}.resonant());
  CHECK_FALSE(FourSpinParams{0.3, 0.5, 0.81}.resonant());
}

TEST_CASE("singlet energies against dense diagonalisation") {
  CHECK(four_spin_singlet_energies(1.0) == std::pair{-4.0, 0.0});
  CHECK(four_spin_singlet_energies(0.6).first == doctest::Approx(-2.4));

  // Project H onto the S = 0 subspace found from the dense S^2 oracle.
  Eigen::SelfAdjointEigenSolver<oracle::Mat> s2(oracle::total_spin_squared(4));
  oracle::Mat singlets(16, 2);
  int found = 0;
  for (Eigen::Index i = 0; i < 16; ++i) {
    if (std::abs(s2.eigenvalues()(i)) < 1e-10) singlets.col(found++) = s2.eigenvectors().col(i);
  }
  REQUIRE(found == 2);
  for (auto [j1p, j2p] : {std::pair{0.3, 0.5}, std::pair{1.0, 1.0}, std::pair{0.2, 0.9}}) {
    const double jm = j1p + j2p;
    const oracle::Mat h = four_spin_hamiltonian({j1p, j2p, jm}).to_dense().cast<Complex>();
    const auto ev = oracle::spectrum(singlets.adjoint() * h * singlets);
    const auto [e1, e2] = four_spin_singlet_energies(jm);
    CHECK(std::abs(ev(0) - e1) < 1e-12);
    CHECK(std::abs(ev(1) - e2) < 1e-12);
  }
}

TEST_CASE("dense evolution reproduces the closed form on resonance") {
  int samples = 0;
  for (double j1p : {0.1, 0.3, 0.5, 0.8, 1.2}) {
    for (double frac : {0.2, 0.5, 0.7}) {
      const double j2p = frac * j1p + 0.05;
      const double jm = j1p + j2p;
      for (double t : {0.0, 0.37, 1.1, 2.9}) {
        const auto dense = dense_four_spin(j1p, j2p, jm, t);
        const auto closed = four_spin_state(jm, t);
        CHECK(std::abs(dense.dot(as_vector(closed))) > 1.0 - 1e-10);
        const double c = concurrence_of(oracle::reduced(dense, 4, 1, 4));
        CHECK(std::abs(c - four_spin_concurrence(jm, t)) < 1e-10);
        ++samples;
      }
    }
  }
  CHECK(samples >= 50);
}

TEST_CASE("boundary concurrence depends only on j_m") {
  const double jm = 0.9;
  for (double t = 0.0; t < 4.0; t += 0.21) {
    const double a = concurrence_of(oracle::reduced(dense_four_spin(0.2, 0.7, jm, t), 4, 1, 4));
    const double b = concurrence_of(oracle::reduced(dense_four_spin(0.45, 0.45, jm, t), 4, 1, 4));
    CHECK(std::abs(a - b) < 1e-10);
  }
}

TEST_CASE("library dense oracle path agrees with the closed form") {
  const double jm = 1.3;
  const auto h = four_spin_hamiltonian({0.6, 0.7, jm});
  const DensePropagator prop(h);
  for (double t : {0.0, 0.4, 1.2}) {
    const auto psi = prop.evolve(two_singlet_state(), t);
    CHECK(overlap_modulus(psi, four_spin_state(jm, t)) > 1.0 - 1e-10);
    CHECK(std::abs(concurrence(reduced_density_matrix(psi, 1, 4)) - four_spin_concurrence(jm, t)) <
          1e-10);
  }
}
