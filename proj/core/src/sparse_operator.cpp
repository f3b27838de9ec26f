#include "kondo/sparse_operator.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "kondo/errors.hpp"

namespace kondo {

template <class Scalar>
CsrOperator<Scalar>::CsrOperator(std::shared_ptr<const SectorBasis> basis,
                                 std::vector<std::size_t> row_ptr,
                                 std::vector<std::size_t> cols,
                                 std::vector<Scalar> values)
    : basis_(std::move(basis)),
      row_ptr_(std::move(row_ptr)),
      cols_(std::move(cols)),
      values_(std::move(values)) {
  if (!basis_) throw InvalidArgument("operator: null basis");
  if (row_ptr_.size() != basis_->size() + 1 || cols_.size() != values_.size() ||
      row_ptr_.back() != values_.size()) {
    throw InvalidArgument("operator: inconsistent compressed-row arrays");
  }
}

template <class Scalar>
void CsrOperator<Scalar>::apply(std::span<const Complex> x, std::span<Complex> y) const {
  const std::size_t n = dimension();
  for (std::size_t r = 0; r < n; ++r) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      acc += values_[k] * x[cols_[k]];
    }
    y[r] = acc;
  }
}

template <class Scalar>
void CsrOperator<Scalar>::apply(std::span<const double> x, std::span<double> y) const
  requires std::is_same_v<Scalar, double>
{
  const std::size_t n = dimension();
  for (std::size_t r = 0; r < n; ++r) {
    double acc = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      acc += values_[k] * x[cols_[k]];
    }
    y[r] = acc;
  }
}

template <class Scalar>
bool CsrOperator<Scalar>::is_hermitian() const {
  const std::size_t n = dimension();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const std::size_t c = cols_[k];
      const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[c]);
      const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[c + 1]);
      const auto it = std::lower_bound(first, last, r);
      if (it == last || *it != r) return false;
      const Scalar mirror = values_[static_cast<std::size_t>(it - cols_.begin())];
      if constexpr (std::is_same_v<Scalar, double>) {
        if (mirror != values_[k]) return false;
      } else {
        if (mirror != std::conj(values_[k])) return false;
      }
    }
  }
  return true;
}

template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> CsrOperator<Scalar>::to_dense() const {
  const auto n = static_cast<Eigen::Index>(dimension());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (std::size_t r = 0; r < dimension(); ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols_[k])) = values_[k];
    }
  }
  return m;
}

template class CsrOperator<double>;
template class CsrOperator<Complex>;

namespace {

void check_site(int site, int n_sites) {
  if (site < 1 || site > n_sites) {
    throw InvalidArgument("site " + std::to_string(site) + " outside register of " +
                          std::to_string(n_sites) + " sites");
  }
}

// Row entries are gathered unsorted with duplicates, then merged. Summation
// order is fixed by the bond and field order, so the result is deterministic.
template <class Scalar>
void flush_row(std::vector<std::pair<std::size_t, Scalar>>& row,
               std::vector<std::size_t>& cols, std::vector<Scalar>& values) {
  std::stable_sort(row.begin(), row.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < row.size();) {
    std::size_t j = i;
    Scalar sum{};
    while (j < row.size() && row[j].first == row[i].first) sum += row[j++].second;
    if (sum != Scalar{}) {
      cols.push_back(row[i].first);
      values.push_back(sum);
    }
    i = j;
  }
  row.clear();
}

template <class Scalar>
CsrOperator<Scalar> assemble(std::span<const Bond> bonds, std::span<const SiteField> fields,
                             std::shared_ptr<const SectorBasis> basis) {
  if (!basis) throw InvalidArgument("operator: null basis");
  const int n_sites = basis->n_sites();
  for (const auto& b : bonds) {
    check_site(b.site_a, n_sites);
    check_site(b.site_b, n_sites);
    if (b.site_a == b.site_b) throw InvalidArgument("bond couples a site to itself");
  }
  for (const auto& f : fields) check_site(f.site, n_sites);

  const std::size_t dim = basis->size();
  std::vector<std::size_t> row_ptr{0};
  row_ptr.reserve(dim + 1);
  std::vector<std::size_t> cols;
  std::vector<Scalar> values;
  std::vector<std::pair<std::size_t, Scalar>> row;

  // Row r collects <r|H|c> from H acting on column configuration c = r;
  // every term here is Hermitian, so <r|H|c> = conj(<c|H|r>) is generated
  // from c = r by the conjugate flip.
  for (std::size_t r = 0; r < dim; ++r) {
    const Config c = basis->config(r);
    Scalar diag{};
    for (const auto& b : bonds) {
      const Config ma = site_bit(b.site_a);
      const Config mb = site_bit(b.site_b);
      const bool ua = (c & ma) != 0;
      const bool ub = (c & mb) != 0;
      if (ua == ub) {
        diag += b.coupling;
      } else {
        diag -= b.coupling;
        const auto target = basis->index_of(c ^ ma ^ mb);
        if (!target) throw InvalidArgument("exchange term left the basis");
        row.emplace_back(*target, Scalar(2.0 * b.coupling));
      }
    }
    for (const auto& f : fields) {
      if constexpr (std::is_same_v<Scalar, double>) {
        throw InvalidArgument("local fields need a complex operator");
      } else {
        const Config m = site_bit(f.site);
        const bool up = (c & m) != 0;
        diag += up ? f.h[2] : -f.h[2];
        const auto target = basis->index_of(c ^ m);
        if (!target) throw InvalidArgument("transverse field needs the full register");
        // <flipped| h.sigma |c>: lowering gives hx + i hy, raising hx - i hy.
        const Complex element = up ? Complex(f.h[0], f.h[1]) : Complex(f.h[0], -f.h[1]);
        if (element != Complex{}) row.emplace_back(*target, element);
      }
    }
    row.emplace_back(r, diag);
    flush_row(row, cols, values);
    row_ptr.push_back(cols.size());
  }
  // The loop above filled row r with entries <target|H|r>, i.e. column r of
  // H. Transposing (conjugating) turns it into row storage.
  const std::size_t nnz = cols.size();
  std::vector<std::size_t> t_ptr(dim + 1, 0);
  for (std::size_t k = 0; k < nnz; ++k) ++t_ptr[cols[k] + 1];
  for (std::size_t i = 0; i < dim; ++i) t_ptr[i + 1] += t_ptr[i];
  std::vector<std::size_t> t_cols(nnz);
  std::vector<Scalar> t_vals(nnz);
  std::vector<std::size_t> fill(t_ptr.begin(), t_ptr.end() - 1);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t k = row_ptr[c]; k < row_ptr[c + 1]; ++k) {
      const std::size_t slot = fill[cols[k]]++;
      t_cols[slot] = c;
      t_vals[slot] = values[k];
    }
  }
  return CsrOperator<Scalar>(std::move(basis), std::move(t_ptr), std::move(t_cols),
                             std::move(t_vals));
}

}  // namespace

SparseOperator build_exchange_operator(std::span<const Bond> bonds,
                                       std::shared_ptr<const SectorBasis> basis) {
  return assemble<double>(bonds, {}, std::move(basis));
}

ComplexSparseOperator build_exchange_field_operator(std::span<const Bond> bonds,
                                                    std::span<const SiteField> fields,
                                                    std::shared_ptr<const SectorBasis> basis) {
  if (basis && !basis->is_full() && !fields.empty()) {
    throw InvalidArgument("local fields require the full 2^N register");
  }
  return assemble<Complex>(bonds, fields, std::move(basis));
}

}  // namespace kondo
