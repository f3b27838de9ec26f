#pragma once

#include <cstdint>
#include <memory>

#include <Eigen/Dense>

#include "kondo/sparse_operator.hpp"
#include "kondo/state.hpp"

namespace kondo {

struct SolverConfig {
  double lanczos_tol = 1e-10;
  int lanczos_max_iter = 500;
  int krylov_dim = 30;
  double step_tol = 1e-9;
  double dt = 0.05;
  std::uint64_t seed = 0x4b6f6e646f2d4753ULL;

  void validate() const;
};

struct GroundState {
  double energy = 0.0;
  StateVector state;
  double residual = 0.0;
  int iterations = 0;
  /// Distance to the next Ritz value; infinity when the Krylov space is 1-d.
  double gap = 0.0;
  bool near_degenerate = false;
};

/// Lowest eigenpair by Lanczos with full reorthogonalisation, started from a
/// seeded pseudo-random vector. Throws ConvergenceError.
GroundState ground_state(const SparseOperator& h, const SolverConfig& cfg);

/// exp(-i H dt) psi by Lanczos exponentiation with adaptive Krylov size and
/// substeps. Throws PropagationError when step_tol cannot be met.
template <class Scalar>
StateVector evolve_krylov(const CsrOperator<Scalar>& h, const StateVector& psi,
                          double dt, const SolverConfig& cfg);

extern template StateVector evolve_krylov(const CsrOperator<double>&, const StateVector&,
                                          double, const SolverConfig&);
extern template StateVector evolve_krylov(const CsrOperator<Complex>&, const StateVector&,
                                          double, const SolverConfig&);

inline constexpr std::size_t kDenseOracleMaxDimension = 20000;

/// Full eigendecomposition of a real symmetric operator, for exact
/// propagation at many times.
class DensePropagator {
 public:
  explicit DensePropagator(const SparseOperator& h);

  StateVector evolve(const StateVector& psi, double t) const;
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const noexcept { return eigenvectors_; }

 private:
  std::shared_ptr<const SectorBasis> basis_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

/// Exact exp(-i H t) psi; dimension guarded by kDenseOracleMaxDimension.
StateVector evolve_dense_oracle(const SparseOperator& h, const StateVector& psi, double t);

/// <psi|H|psi>. Throws NumericalError if the imaginary part exceeds 1e-12 relative.
template <class Scalar>
double expectation(const CsrOperator<Scalar>& h, const StateVector& psi);

extern template double expectation(const CsrOperator<double>&, const StateVector&);
extern template double expectation(const CsrOperator<Complex>&, const StateVector&);

}  // namespace kondo
