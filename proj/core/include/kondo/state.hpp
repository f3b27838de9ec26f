#pragma once

#include <complex>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "kondo/basis.hpp"

namespace kondo {

using Complex = std::complex<double>;

/// Complex amplitudes over a shared SectorBasis.
class StateVector {
 public:
  StateVector(std::shared_ptr<const SectorBasis> basis, std::vector<Complex> amplitudes);
  /// Zero vector over `basis`.
  explicit StateVector(std::shared_ptr<const SectorBasis> basis);

  const SectorBasis& basis() const noexcept { return *basis_; }
  const std::shared_ptr<const SectorBasis>& basis_ptr() const noexcept { return basis_; }
  std::size_t size() const noexcept { return amplitudes_.size(); }

  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  std::span<Complex> amplitudes() noexcept { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }
  Complex& operator[](std::size_t i) { return amplitudes_[i]; }

  /// Amplitude of configuration `c` (zero when outside the basis).
  Complex amplitude_of(Config c) const noexcept;

  double norm() const noexcept;
  void normalize();

 private:
  std::shared_ptr<const SectorBasis> basis_;
  std::vector<Complex> amplitudes_;
};

/// <a|b>; both states must live on the same space.
Complex inner_product(const StateVector& a, const StateVector& b);

/// |<a|b>| for normalised states, insensitive to global phase.
double overlap_modulus(const StateVector& a, const StateVector& b);

/// Maps a state to another basis of the same register (e.g. a sector into the
/// full space). Throws InvalidArgument if amplitude would be lost.
StateVector reembed(const StateVector& psi, std::shared_ptr<const SectorBasis> target);

/// Product of a left-chain and a right-chain state in the composite layout
/// of CompositeSpec. Each chain state uses its own site numbering (impurity
/// at site 1); the right chain is mirrored so its impurity lands on site N.
StateVector embed_product_state(const StateVector& left, const StateVector& right,
                                std::shared_ptr<const SectorBasis> composite_basis);

/// sigma^z on one site, applied in place.
void apply_sigma_z(StateVector& psi, int site);

/// Text dump format:
///
///   kondo-state 1
///   n_sites <int>
///   n_up <int|full>
///   dimension <int>
///   <re> <im>        one line per basis configuration, in basis order
///
/// Amplitudes are written with 17 significant digits so the dump is lossless.
void write_state(std::ostream& out, const StateVector& psi);
StateVector read_state(std::istream& in);

}  // namespace kondo
