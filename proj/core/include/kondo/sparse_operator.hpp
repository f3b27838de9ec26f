#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "kondo/basis.hpp"

namespace kondo {

using Complex = std::complex<double>;

/// Exchange term coupling * (sigma_a . sigma_b) between two 1-based sites,
/// Pauli normalisation: +-coupling on the diagonal, 2*coupling for a flip.
struct Bond {
  int site_a;
  int site_b;
  double coupling;
};

/// Local field h . sigma on one site.
struct SiteField {
  int site;
  std::array<double, 3> h;  // (x, y, z)
};

/// Compressed-row operator over a SectorBasis. Entries are stored with
/// their transposes (conjugates for complex scalars), so symmetry holds
/// entry by entry.
template <class Scalar>
class CsrOperator {
 public:
  using scalar_type = Scalar;

  CsrOperator(std::shared_ptr<const SectorBasis> basis,
              std::vector<std::size_t> row_ptr, std::vector<std::size_t> cols,
              std::vector<Scalar> values);

  std::size_t dimension() const noexcept { return row_ptr_.size() - 1; }
  std::size_t nonzeros() const noexcept { return values_.size(); }
  const SectorBasis& basis() const noexcept { return *basis_; }
  const std::shared_ptr<const SectorBasis>& basis_ptr() const noexcept {
    return basis_;
  }

  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> cols() const noexcept { return cols_; }
  std::span<const Scalar> values() const noexcept { return values_; }

  /// y = H x. `y` must not alias `x`.
  void apply(std::span<const Complex> x, std::span<Complex> y) const;
  void apply(std::span<const double> x, std::span<double> y) const
    requires std::is_same_v<Scalar, double>;

  /// Entry (i, j) equals conj(entry (j, i)) exactly.
  bool is_hermitian() const;

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> to_dense() const;

 private:
  std::shared_ptr<const SectorBasis> basis_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> cols_;
  std::vector<Scalar> values_;
};

using SparseOperator = CsrOperator<double>;
using ComplexSparseOperator = CsrOperator<Complex>;

extern template class CsrOperator<double>;
extern template class CsrOperator<Complex>;

/// Sum of exchange bonds restricted to `basis`. Throws InvalidArgument on
/// a site outside the register.
SparseOperator build_exchange_operator(std::span<const Bond> bonds,
                                       std::shared_ptr<const SectorBasis> basis);

/// Exchange bonds plus local fields. Transverse field components break
/// magnetisation conservation, so `basis` must be the full register.
ComplexSparseOperator build_exchange_field_operator(
    std::span<const Bond> bonds, std::span<const SiteField> fields,
    std::shared_ptr<const SectorBasis> basis);

}  // namespace kondo
