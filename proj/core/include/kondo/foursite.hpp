#pragma once

#include <utility>

#include "kondo/sparse_operator.hpp"
#include "kondo/state.hpp"

namespace kondo::foursite {

/// Two singlets (1,2) and (3,4) joined by j_m between spins 2 and 3.
struct FourSpinParams {
  double j1_prime = 0.0;
  double j2_prime = 0.0;
  double j_m = 0.0;

  void validate() const;
  /// |j_m - (j1' + j2')| < 1e-12.
  bool resonant() const noexcept;
};

/// Closed-form state at time t on resonance, up to a global phase, in the
/// full 16-dimensional register (ket labels read site 1 first).
StateVector four_spin_state(double j_m, double t);

/// max{0, (1 - 3 cos(4 j_m t)) / 4}, valid on resonance.
double four_spin_concurrence(double j_m, double t);

struct OptimalCoupling {
  double j_m;
  double t_star;
};
/// j_m = j1' + j2', t* = pi / (4 j_m).
OptimalCoupling four_spin_optimal(double j1_prime, double j2_prime);

/// Energies (E_S1, E_S2) = (-4 j_m, 0) of the two singlets reached from the
/// initial state.
std::pair<double, double> four_spin_singlet_energies(double j_m);

/// Four-spin Hamiltonian over the full register, used as the dense
/// reference for any (off-resonant) parameter set.
SparseOperator four_spin_hamiltonian(const FourSpinParams& p);

/// |psi^-> (x) |psi^-> in the full 4-site register.
StateVector two_singlet_state();

}  // namespace kondo::foursite
