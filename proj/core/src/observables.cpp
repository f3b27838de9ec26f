#include "kondo/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "kondo/errors.hpp"

namespace kondo {

void TwoQubitDensityMatrix::validate(double tol) const {
  if (!rho_.allFinite()) throw InvalidArgument("density matrix has non-finite entries");
  const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) throw InvalidArgument("density matrix is not Hermitian (" + std::to_string(herm) + ")");
  const auto tr = rho_.trace();
  if (std::abs(tr - 1.0) > tol) {
    throw InvalidArgument("density matrix trace " + std::to_string(tr.real()) + " != 1");
  }
  const Eigen::Matrix4cd sym = 0.5 * (rho_ + rho_.adjoint());
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(sym, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw InvalidArgument("density matrix is not positive semidefinite");
  }
}

TwoQubitDensityMatrix TwoQubitDensityMatrix::singlet() {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(1, 1) = 0.5;
  rho(2, 2) = 0.5;
  rho(1, 2) = -0.5;
  rho(2, 1) = -0.5;
  return TwoQubitDensityMatrix(rho);
}

TwoQubitDensityMatrix TwoQubitDensityMatrix::maximally_mixed() {
  return TwoQubitDensityMatrix(Eigen::Matrix4cd::Identity() * 0.25);
}

TwoQubitDensityMatrix reduced_density_matrix(const StateVector& psi, int site_a, int site_b) {
  const int n = psi.basis().n_sites();
  if (site_a < 1 || site_b > n || site_a >= site_b) {
    throw InvalidArgument("reduced density matrix needs 1 <= site_a < site_b <= " +
                          std::to_string(n) + ", got (" + std::to_string(site_a) + ", " +
                          std::to_string(site_b) + ")");
  }
  const Config ma = site_bit(site_a);
  const Config mb = site_bit(site_b);
  const std::array<Config, 4> patterns{0, mb, ma, ma | mb};
  const auto& basis = psi.basis();

  // rho[s][s'] = sum over environment e of psi(e, s) conj(psi(e, s')).
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const Complex amp = psi[i];
    if (amp == Complex{}) continue;
    const Config c = basis.config(i);
    const int s = ((c & ma) ? 2 : 0) + ((c & mb) ? 1 : 0);
    const Config env = c & ~(ma | mb);
    for (int sp = 0; sp < 4; ++sp) {
      const auto j = basis.index_of(env | patterns[static_cast<std::size_t>(sp)]);
      if (!j) continue;
      rho(s, sp) += amp * std::conj(psi[*j]);
    }
  }
  return TwoQubitDensityMatrix(rho);
}

double concurrence(const TwoQubitDensityMatrix& rho_in) {
  rho_in.validate();
  const Eigen::Matrix4cd rho = 0.5 * (rho_in.matrix() + rho_in.matrix().adjoint());

  // sigma^y (x) sigma^y in the |00>,|01>,|10>,|11> basis.
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;

  // rho = W W^dag; the lambdas are the singular values of W^T yy W.
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
  const Eigen::Vector4d w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4cd wm = es.eigenvectors() * w.cast<Complex>().asDiagonal();
  const Eigen::Matrix4cd tau = wm.transpose() * yy * wm;
  const Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
  std::array<double, 4> lambda{};
  for (int i = 0; i < 4; ++i) lambda[static_cast<std::size_t>(i)] = svd.singularValues()(i);
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::clamp(lambda[0] - lambda[1] - lambda[2] - lambda[3], 0.0, 1.0);
}

double total_spin_squared(const StateVector& psi) {
  // S^2 = 3N/4 + (1/2) sum_{i<j} sigma_i . sigma_j
  const int n = psi.basis().n_sites();
  const auto& basis = psi.basis();
  double pair_sum = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const Complex amp = psi[k];
    if (amp == Complex{}) continue;
    const Config c = basis.config(k);
    const double weight = std::norm(amp);
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        const Config mi = site_bit(i);
        const Config mj = site_bit(j);
        const bool ui = (c & mi) != 0;
        const bool uj = (c & mj) != 0;
        if (ui == uj) {
          pair_sum += weight;
        } else {
          pair_sum -= weight;
          const auto t = basis.index_of(c ^ mi ^ mj);
          if (t) pair_sum += 2.0 * std::real(std::conj(psi[*t]) * amp);
        }
      }
    }
  }
  const double norm2 = psi.norm() * psi.norm();
  return 0.75 * n * norm2 + 0.5 * pair_sum;
}

double singlet_fidelity(const TwoQubitDensityMatrix& rho) {
  const double s = 1.0 / std::numbers::sqrt2;
  const Eigen::Vector4cd singlet(0.0, s, -s, 0.0);
  return std::clamp(std::real(singlet.dot(rho.matrix() * singlet)), 0.0, 1.0);
}

}  // namespace kondo
