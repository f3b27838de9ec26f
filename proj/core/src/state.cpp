#include "kondo/state.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "kondo/errors.hpp"

namespace kondo {

StateVector::StateVector(std::shared_ptr<const SectorBasis> basis,
                         std::vector<Complex> amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (!basis_) throw InvalidArgument("state: null basis");
  if (amplitudes_.size() != basis_->size()) {
    throw InvalidArgument("state: " + std::to_string(amplitudes_.size()) +
                          " amplitudes for a basis of " + std::to_string(basis_->size()));
  }
}

StateVector::StateVector(std::shared_ptr<const SectorBasis> basis)
    : StateVector(basis, std::vector<Complex>(basis ? basis->size() : 0)) {}

Complex StateVector::amplitude_of(Config c) const noexcept {
  const auto idx = basis_->index_of(c);
  return idx ? amplitudes_[*idx] : Complex{};
}

double StateVector::norm() const noexcept {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::normalize() {
  const double n = norm();
  if (!(n > 0.0)) throw NumericalError("cannot normalise a zero state");
  for (auto& a : amplitudes_) a /= n;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (!a.basis().same_space(b.basis())) {
    throw InvalidArgument("inner product of states on different bases");
  }
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double overlap_modulus(const StateVector& a, const StateVector& b) {
  return std::abs(inner_product(a, b));
}

StateVector reembed(const StateVector& psi, std::shared_ptr<const SectorBasis> target) {
  if (!target || target->n_sites() != psi.basis().n_sites()) {
    throw InvalidArgument("reembed: target register differs");
  }
  StateVector out(target);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const auto idx = target->index_of(psi.basis().config(i));
    if (!idx) {
      if (psi[i] != Complex{}) throw InvalidArgument("reembed: amplitude outside target basis");
      continue;
    }
    out[*idx] = psi[i];
  }
  return out;
}

StateVector embed_product_state(const StateVector& left, const StateVector& right,
                                std::shared_ptr<const SectorBasis> composite_basis) {
  if (!composite_basis) throw InvalidArgument("embed: null basis");
  const int nl = left.basis().n_sites();
  const int nr = right.basis().n_sites();
  const int n = composite_basis->n_sites();
  if (nl + nr != n) {
    throw InvalidArgument("embed: composite register has " + std::to_string(n) +
                          " sites, chains have " + std::to_string(nl) + " + " +
                          std::to_string(nr));
  }
  const auto lu = left.basis().n_up();
  const auto ru = right.basis().n_up();
  const auto cu = composite_basis->n_up();
  if (cu && (!lu || !ru || *lu + *ru != *cu)) {
    throw InvalidArgument("embed: chain sectors do not add up to the composite sector");
  }

  // Right-chain site r (bit r-1) lands on global site N + 1 - r (bit N - r).
  std::vector<Config> mirrored(right.size());
  for (std::size_t j = 0; j < right.size(); ++j) {
    const Config rc = right.basis().config(j);
    Config g = 0;
    for (int r = 1; r <= nr; ++r) {
      if ((rc >> (r - 1)) & 1U) g |= site_bit(n + 1 - r);
    }
    mirrored[j] = g;
  }

  StateVector out(composite_basis);
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (left[i] == Complex{}) continue;
    const Config lc = left.basis().config(i);
    for (std::size_t j = 0; j < right.size(); ++j) {
      const auto idx = composite_basis->index_of(lc | mirrored[j]);
      if (!idx) {
        if (right[j] != Complex{}) throw InvalidArgument("embed: product leaves the composite sector");
        continue;
      }
      out[*idx] = left[i] * right[j];
    }
  }
  return out;
}

void apply_sigma_z(StateVector& psi, int site) {
  if (site < 1 || site > psi.basis().n_sites()) throw InvalidArgument("sigma_z: site out of range");
  const Config m = site_bit(site);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if ((psi.basis().config(i) & m) == 0) psi[i] = -psi[i];
  }
}

void write_state(std::ostream& out, const StateVector& psi) {
  const auto& b = psi.basis();
  out << "kondo-state 1\n";
  out << "n_sites " << b.n_sites() << '\n';
  out << "n_up ";
  if (b.n_up()) {
    out << *b.n_up() << '\n';
  } else {
    out << "full\n";
  }
  out << "dimension " << b.size() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& a : psi.amplitudes()) out << a.real() << ' ' << a.imag() << '\n';
  if (!out) throw Error("write_state: stream failure");
}

StateVector read_state(std::istream& in) {
  const auto expect = [&](const char* key) {
    std::string token;
    if (!(in >> token) || token != key) {
      throw InvalidArgument(std::string("read_state: expected '") + key + "'");
    }
  };
  expect("kondo-state");
  int version = 0;
  if (!(in >> version) || version != 1) throw InvalidArgument("read_state: unsupported version");
  expect("n_sites");
  int n_sites = 0;
  if (!(in >> n_sites)) throw InvalidArgument("read_state: bad n_sites");
  expect("n_up");
  std::string up;
  in >> up;
  expect("dimension");
  std::size_t dim = 0;
  if (!(in >> dim)) throw InvalidArgument("read_state: bad dimension");

  std::shared_ptr<const SectorBasis> basis;
  if (up == "full") {
    basis = std::make_shared<const SectorBasis>(SectorBasis::full(n_sites));
  } else {
    basis = std::make_shared<const SectorBasis>(SectorBasis::sector(n_sites, std::stoi(up)));
  }
  if (basis->size() != dim) throw InvalidArgument("read_state: dimension mismatch");
  std::vector<Complex> amps(dim);
  for (auto& a : amps) {
    double re = 0.0;
    double im = 0.0;
    if (!(in >> re >> im)) throw InvalidArgument("read_state: truncated amplitudes");
    a = {re, im};
  }
  return StateVector(std::move(basis), std::move(amps));
}

}  // namespace kondo
