#include "kondo/foursite.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "kondo/errors.hpp"

namespace kondo::foursite {

namespace {

std::shared_ptr<const SectorBasis> full_register() {
  static const auto basis = std::make_shared<const SectorBasis>(SectorBasis::full(4));
  return basis;
}

}  // namespace

void FourSpinParams::validate() const {
  if (!(j1_prime >= 0.0) || !(j2_prime >= 0.0) || !(j_m >= 0.0)) {
    throw InvalidArgument("four-spin couplings must be >= 0");
  }
}

bool FourSpinParams::resonant() const noexcept {
  return std::abs(j_m - (j1_prime + j2_prime)) < 1e-12;
}

StateVector four_spin_state(double j_m, double t) {
  StateVector psi(full_register());
  const double phase = 2.0 * j_m * t;
  const Complex a{0.0, -std::sin(phase) / 2.0};
  const Complex b{-std::cos(phase) / 2.0, 0.0};
  const Complex c = std::polar(0.5, phase);
  const auto set = [&](const char* ket, Complex value) {
    psi[*psi.basis().index_of(config_from_ket(ket))] = value;
  };
  set("0011", a);
  set("1100", a);
  set("1001", b);
  set("0110", b);
  set("0101", c);
  set("1010", c);
  return psi;
}

double four_spin_concurrence(double j_m, double t) {
  return std::max(0.0, (1.0 - 3.0 * std::cos(4.0 * j_m * t)) / 4.0);
}

OptimalCoupling four_spin_optimal(double j1_prime, double j2_prime) {
  if (!(j1_prime > 0.0) || !(j2_prime > 0.0)) {
    throw InvalidArgument("four-spin optimum needs positive singlet couplings");
  }
  const double j_m = j1_prime + j2_prime;
  return {j_m, std::numbers::pi / (4.0 * j_m)};
}

std::pair<double, double> four_spin_singlet_energies(double j_m) {
  return {-4.0 * j_m, 0.0};
}

SparseOperator four_spin_hamiltonian(const FourSpinParams& p) {
  p.validate();
  const std::vector<Bond> bonds{{1, 2, p.j1_prime}, {3, 4, p.j2_prime}, {2, 3, p.j_m}};
  return build_exchange_operator(bonds, full_register());
}

StateVector two_singlet_state() {
  StateVector psi(full_register());
  // (|01> - |10>)/sqrt(2) on (1,2) and on (3,4).
  const double s = 1.0 / std::numbers::sqrt2;
  const auto singlet = [s](bool a, bool b) { return a == b ? 0.0 : (a ? -s : s); };
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const Config c = psi.basis().config(i);
    const auto up = [c](int site) { return ((c >> (site - 1)) & 1U) != 0; };
    psi[i] = singlet(up(1), up(2)) * singlet(up(3), up(4));
  }
  return psi;
}

}  // namespace kondo::foursite
