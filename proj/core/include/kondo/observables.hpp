#pragma once

#include <Eigen/Dense>

#include "kondo/state.hpp"

namespace kondo {

/// Two-qubit density matrix in the basis |00>, |01>, |10>, |11> of
/// (site_a, site_b), where 1 denotes spin up.
class TwoQubitDensityMatrix {
 public:
  TwoQubitDensityMatrix() : rho_(Eigen::Matrix4cd::Zero()) {}
  explicit TwoQubitDensityMatrix(const Eigen::Matrix4cd& rho) : rho_(rho) {}

  const Eigen::Matrix4cd& matrix() const noexcept { return rho_; }
  Eigen::Matrix4cd& matrix() noexcept { return rho_; }
  std::complex<double> operator()(int r, int c) const { return rho_(r, c); }

  /// Throws InvalidArgument if not Hermitian, unit-trace and PSD within `tol`.
  void validate(double tol = 1e-8) const;

  static TwoQubitDensityMatrix singlet();
  static TwoQubitDensityMatrix maximally_mixed();

 private:
  Eigen::Matrix4cd rho_;
};

/// Partial trace over every site except 1 <= site_a < site_b <= n_sites.
TwoQubitDensityMatrix reduced_density_matrix(const StateVector& psi, int site_a,
                                             int site_b);

/// Wootters concurrence.
double concurrence(const TwoQubitDensityMatrix& rho);

/// <S_total^2> in spin-1/2 units: 0 for a singlet, 2 for a triplet.
double total_spin_squared(const StateVector& psi);

/// <psi^-|rho|psi^->.
double singlet_fidelity(const TwoQubitDensityMatrix& rho);

}  // namespace kondo
