#include "kondo/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "kondo/errors.hpp"

namespace kondo {

void SolverConfig::validate() const {
  if (!(lanczos_tol > 0.0)) throw InvalidArgument("lanczos_tol must be positive");
  if (lanczos_max_iter <= 0) throw InvalidArgument("lanczos_max_iter must be positive");
  if (krylov_dim < 3) throw InvalidArgument("krylov_dim must be >= 3");
  if (!(step_tol > 0.0)) throw InvalidArgument("step_tol must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
}

namespace {

template <class T>
double dot_real(const std::vector<T>& a, const std::vector<T>& b) {
  if constexpr (std::is_same_v<T, double>) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  } else {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::real(std::conj(a[i]) * b[i]);
    return s;
  }
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if constexpr (std::is_same_v<T, double>) {
    return dot_real(a, b);
  } else {
    T s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
  }
}

template <class T>
double norm2(const std::vector<T>& a) {
  return std::sqrt(dot_real(a, a));
}

// Two passes of classical Gram-Schmidt against every stored basis vector.
template <class T>
void reorthogonalize(std::vector<T>& w, const std::vector<std::vector<T>>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& v : basis) {
      const T c = dot(v, w);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * v[i];
    }
  }
}

struct Tridiagonal {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

Tridiagonal eigen_tridiagonal(const std::vector<double>& alpha, const std::vector<double>& beta,
                              std::size_t size) {
  const auto k = static_cast<Eigen::Index>(size);
  Eigen::VectorXd diag(k);
  Eigen::VectorXd sub(std::max<Eigen::Index>(k - 1, 0));
  for (Eigen::Index i = 0; i < k; ++i) diag(i) = alpha[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < k; ++i) sub(i) = beta[static_cast<std::size_t>(i)];
  if (k == 1) return {diag, Eigen::MatrixXd::Identity(1, 1)};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw NumericalError("tridiagonal eigensolve failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

// exp(-i T tau) e_1 from the eigendecomposition of T.
Eigen::VectorXcd exp_tridiagonal_e1(const Tridiagonal& t, double tau) {
  const Eigen::Index k = t.values.size();
  Eigen::VectorXcd coeff(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    coeff(i) = std::polar(1.0, -t.values(i) * tau) * t.vectors(0, i);
  }
  return t.vectors.cast<Complex>() * coeff;
}

std::vector<Complex> to_vector(std::span<const Complex> s) { return {s.begin(), s.end()}; }

}  // namespace

GroundState ground_state(const SparseOperator& h, const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t n = h.dimension();
  if (n == 0) throw InvalidArgument("ground_state: empty operator");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> v0(n);
  for (auto& x : v0) x = uni(rng);
  {
    const double nv = norm2(v0);
    for (auto& x : v0) x /= nv;
  }

  std::vector<std::vector<double>> lanczos{std::move(v0)};
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> w(n);
  std::vector<double> hx(n);
  double last_residual = std::numeric_limits<double>::infinity();

  const auto max_iter = static_cast<std::size_t>(cfg.lanczos_max_iter);
  for (std::size_t it = 0; it < max_iter; ++it) {
    const auto& v = lanczos.back();
    h.apply(std::span<const double>(v), std::span<double>(w));
    const double a = dot_real(v, w);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] -= a * v[i];
      if (it > 0) w[i] -= beta.back() * lanczos[it - 1][i];
    }
    reorthogonalize(w, lanczos);
    const double b = norm2(w);
    alpha.push_back(a);

    const std::size_t m = alpha.size();
    const bool exhausted = m == n || b <= 1e-13 * std::max(1.0, std::abs(a));
    if (exhausted || m <= 40 || m % 5 == 0 || it + 1 == max_iter) {
      const auto t = eigen_tridiagonal(alpha, beta, m);
      const double ritz_residual = exhausted ? 0.0 : b * std::abs(t.vectors(Eigen::Index(m) - 1, 0));
      if (ritz_residual < cfg.lanczos_tol || exhausted || it + 1 == max_iter) {
        std::vector<double> x(n, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
          const double c = t.vectors(static_cast<Eigen::Index>(j), 0);
          for (std::size_t i = 0; i < n; ++i) x[i] += c * lanczos[j][i];
        }
        const double nx = norm2(x);
        for (auto& xi : x) xi /= nx;
        const double energy = t.values(0);
        h.apply(std::span<const double>(x), std::span<double>(hx));
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) r2 += (hx[i] - energy * x[i]) * (hx[i] - energy * x[i]);
        last_residual = std::sqrt(r2);
        if (last_residual < cfg.lanczos_tol) {
          const double gap = m > 1 ? t.values(1) - t.values(0)
                                   : std::numeric_limits<double>::infinity();
          std::vector<Complex> amps(x.begin(), x.end());
          return GroundState{energy,
                             StateVector(h.basis_ptr(), std::move(amps)),
                             last_residual,
                             static_cast<int>(m),
                             gap,
                             gap < 1e-8};
        }
        if (exhausted) break;
      }
    }
    beta.push_back(b);
    for (auto& wi : w) wi /= b;
    lanczos.push_back(w);
  }
  throw ConvergenceError("Lanczos ground state did not converge after " +
                             std::to_string(cfg.lanczos_max_iter) +
                             " iterations (residual " + std::to_string(last_residual) + ")",
                         last_residual);
}

template <class Scalar>
StateVector evolve_krylov(const CsrOperator<Scalar>& h, const StateVector& psi, double dt,
                          const SolverConfig& cfg) {
  cfg.validate();
  if (!h.basis().same_space(psi.basis()) || h.dimension() != psi.size()) {
    throw InvalidArgument("evolve_krylov: state and operator live on different bases");
  }
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw InvalidArgument("evolve_krylov: dt must be >= 0");
  if (dt == 0.0) return psi;

  const std::size_t n = psi.size();
  const double input_norm = psi.norm();
  std::vector<Complex> v = to_vector(psi.amplitudes());
  const auto max_dim = static_cast<std::size_t>(std::min<std::size_t>(
      static_cast<std::size_t>(cfg.krylov_dim), n));
  const double min_tau = dt * 1e-10;

  double remaining = dt;
  double tau = dt;
  std::vector<Complex> w(n);
  while (remaining > 0.0) {
    tau = std::min(tau, remaining);
    const double beta0 = norm2(v);
    if (beta0 == 0.0) break;

    std::vector<std::vector<Complex>> krylov;
    krylov.reserve(max_dim);
    krylov.emplace_back(n);
    for (std::size_t i = 0; i < n; ++i) krylov[0][i] = v[i] / beta0;
    std::vector<double> alpha;
    std::vector<double> beta;
    Tridiagonal t;
    Eigen::VectorXcd y;
    bool accepted = false;
    double err = std::numeric_limits<double>::infinity();
    double last_beta = 0.0;

    for (std::size_t j = 0; j < max_dim; ++j) {
      h.apply(std::span<const Complex>(krylov[j]), std::span<Complex>(w));
      const double a = dot_real(krylov[j], w);
      for (std::size_t i = 0; i < n; ++i) {
        w[i] -= a * krylov[j][i];
        if (j > 0) w[i] -= beta.back() * krylov[j - 1][i];
      }
      reorthogonalize(w, krylov);
      last_beta = norm2(w);
      alpha.push_back(a);
      const std::size_t k = alpha.size();
      t = eigen_tridiagonal(alpha, beta, k);
      y = exp_tridiagonal_e1(t, tau);
      const bool invariant = k == n || last_beta <= 1e-13 * std::max(1.0, std::abs(a));
      err = invariant ? 0.0 : beta0 * last_beta * std::abs(y(Eigen::Index(k) - 1));
      if (err <= cfg.step_tol) {
        accepted = true;
        break;
      }
      if (j + 1 < max_dim) {
        beta.push_back(last_beta);
        for (auto& wi : w) wi /= last_beta;
        krylov.push_back(w);
      }
    }
    // Krylov space exhausted without meeting the tolerance: shrink the
    // substep, reusing the same tridiagonal matrix.
    while (!accepted) {
      tau *= 0.5;
      if (tau < min_tau) {
        throw PropagationError("Krylov propagation cannot meet step_tol " +
                               std::to_string(cfg.step_tol) + " (estimate " +
                               std::to_string(err) + ")");
      }
      y = exp_tridiagonal_e1(t, tau);
      err = beta0 * last_beta * std::abs(y(y.size() - 1));
      accepted = err <= cfg.step_tol;
    }

    std::fill(v.begin(), v.end(), Complex{});
    for (Eigen::Index j = 0; j < y.size(); ++j) {
      const Complex c = beta0 * y(j);
      const auto& q = krylov[static_cast<std::size_t>(j)];
      for (std::size_t i = 0; i < n; ++i) v[i] += c * q[i];
    }
    remaining -= tau;
    if (remaining < 1e-15 * dt) remaining = 0.0;
    tau *= 2.0;
  }

  const double out_norm = norm2(v);
  if (out_norm > 0.0) {
    for (auto& x : v) x *= input_norm / out_norm;
  }
  return StateVector(psi.basis_ptr(), std::move(v));
}

template StateVector evolve_krylov(const CsrOperator<double>&, const StateVector&, double,
                                   const SolverConfig&);
template StateVector evolve_krylov(const CsrOperator<Complex>&, const StateVector&, double,
                                   const SolverConfig&);

DensePropagator::DensePropagator(const SparseOperator& h) : basis_(h.basis_ptr()) {
  if (h.dimension() > kDenseOracleMaxDimension) {
    throw InvalidArgument("dense oracle: dimension " + std::to_string(h.dimension()) +
                          " exceeds " + std::to_string(kDenseOracleMaxDimension));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.to_dense());
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolve failed");
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
}

StateVector DensePropagator::evolve(const StateVector& psi, double t) const {
  if (!basis_->same_space(psi.basis())) {
    throw InvalidArgument("dense oracle: state lives on a different basis");
  }
  const auto n = static_cast<Eigen::Index>(psi.size());
  const Eigen::Map<const Eigen::VectorXcd> in(psi.amplitudes().data(), n);
  Eigen::VectorXcd coeff = eigenvectors_.transpose().cast<Complex>() * in;
  for (Eigen::Index i = 0; i < n; ++i) coeff(i) *= std::polar(1.0, -eigenvalues_(i) * t);
  const Eigen::VectorXcd out = eigenvectors_.cast<Complex>() * coeff;
  return StateVector(psi.basis_ptr(), std::vector<Complex>(out.data(), out.data() + n));
}

StateVector evolve_dense_oracle(const SparseOperator& h, const StateVector& psi, double t) {
  return DensePropagator(h).evolve(psi, t);
}

template <class Scalar>
double expectation(const CsrOperator<Scalar>& h, const StateVector& psi) {
  if (!h.basis().same_space(psi.basis())) {
    throw InvalidArgument("expectation: state and operator live on different bases");
  }
  std::vector<Complex> hpsi(psi.size());
  h.apply(psi.amplitudes(), std::span<Complex>(hpsi));
  Complex s{};
  for (std::size_t i = 0; i < psi.size(); ++i) s += std::conj(psi[i]) * hpsi[i];
  if (std::abs(s.imag()) > 1e-12 * std::max(1.0, std::abs(s.real()))) {
    throw NumericalError("expectation value has an imaginary part " + std::to_string(s.imag()));
  }
  return s.real();
}

template double expectation(const CsrOperator<double>&, const StateVector&);
template double expectation(const CsrOperator<Complex>&, const StateVector&);

}  // namespace kondo
