#include "kondo/model.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "kondo/errors.hpp"

namespace kondo {

namespace {

struct TableEntry {
  int n_sites;
  double j_prime;
};

// Impurity couplings giving a Kondo screening length of N_k - 1.
constexpr std::array<TableEntry, 18> kImpurityTable{{
    {4, 0.300},  {6, 0.280},  {8, 0.260},  {10, 0.250}, {12, 0.240}, {14, 0.230},
    {16, 0.220}, {18, 0.215}, {20, 0.210}, {22, 0.205}, {24, 0.202}, {26, 0.198},
    {28, 0.195}, {30, 0.190}, {32, 0.187}, {34, 0.184}, {36, 0.180}, {38, 0.175},
}};

}  // namespace

void ChainSpec::validate() const {
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw InvalidArgument("chain length must be even and >= 2, got " +
                          std::to_string(n_sites));
  }
  if (n_sites > kMaxSites) throw InvalidArgument("chain too long");
  if (!(j1 > 0.0) || !std::isfinite(j1)) throw InvalidArgument("j1 must be positive");
  if (!(j2 >= 0.0) || !std::isfinite(j2)) throw InvalidArgument("j2 must be >= 0");
  if (!(j_prime > 0.0) || !std::isfinite(j_prime)) {
    throw InvalidArgument("impurity coupling j_prime must be positive");
  }
}

Regime ChainSpec::regime() const noexcept {
  if (j2 < kCriticalJ2) return Regime::kondo;
  if (j2 > kCriticalJ2) return Regime::dimer;
  return Regime::critical;
}

void CompositeSpec::validate() const {
  left.validate();
  right.validate();
  if (!(j_m >= 0.0) || !std::isfinite(j_m)) throw InvalidArgument("j_m must be >= 0");
  if (left.j1 != right.j1) throw InvalidArgument("both chains must share the energy unit j1");
  if (n_sites() > kMaxSites) throw InvalidArgument("composite too long");
}

double impurity_coupling_for(int n_sites) {
  for (const auto& e : kImpurityTable) {
    if (e.n_sites == n_sites) return e.j_prime;
  }
  throw NotFound("no tabulated impurity coupling for a chain of " +
                 std::to_string(n_sites) + " sites (table covers even 4..38)");
}

ChainSpec tabulated_chain(int n_sites, double j2) {
  ChainSpec spec{n_sites, 1.0, j2, impurity_coupling_for(n_sites)};
  spec.validate();
  return spec;
}

std::vector<Bond> chain_bonds(const ChainSpec& spec, int offset, int sign) {
  spec.validate();
  const int n = spec.n_sites;
  const double j1 = spec.j1;
  const double j2 = spec.j2_energy();
  const auto g = [&](int i) { return offset + sign * i; };

  std::vector<Bond> bonds;
  bonds.push_back({g(1), g(2), spec.j_prime * j1});
  if (j2 != 0.0 && n >= 3) bonds.push_back({g(1), g(3), spec.j_prime * j2});
  for (int i = 2; i + 1 <= n; ++i) bonds.push_back({g(i), g(i + 1), j1});
  if (j2 != 0.0) {
    for (int i = 2; i + 2 <= n; ++i) bonds.push_back({g(i), g(i + 2), j2});
  }
  return bonds;
}

std::vector<Bond> junction_bonds(const CompositeSpec& comp) {
  comp.validate();
  std::vector<Bond> bonds;
  if (comp.j_m == 0.0) return bonds;
  const int nl = comp.left.n_sites;
  const int nr = comp.right.n_sites;
  const double j1 = comp.left.j1;
  // Both chains share j1; the next-nearest junction terms take each
  // chain's own J2 so that asymmetric pairs stay well defined.
  const int l_end = comp.left_global_site(nl);
  const int r_end = comp.right_global_site(nr);
  bonds.push_back({l_end, r_end, comp.j_m * j1});
  if (comp.left.j2_energy() != 0.0) {
    bonds.push_back({comp.left_global_site(nl - 1), r_end, comp.j_m * comp.left.j2_energy()});
  }
  if (comp.right.j2_energy() != 0.0) {
    bonds.push_back({l_end, comp.right_global_site(nr - 1), comp.j_m * comp.right.j2_energy()});
  }
  return bonds;
}

std::vector<Bond> composite_bonds(const CompositeSpec& comp) {
  comp.validate();
  auto bonds = chain_bonds(comp.left, 0, 1);
  const auto right = chain_bonds(comp.right, comp.n_sites() + 1, -1);
  bonds.insert(bonds.end(), right.begin(), right.end());
  const auto junction = junction_bonds(comp);
  bonds.insert(bonds.end(), junction.begin(), junction.end());
  return bonds;
}

SparseOperator build_chain_hamiltonian(const ChainSpec& spec,
                                       std::shared_ptr<const SectorBasis> basis) {
  if (!basis || basis->n_sites() != spec.n_sites) {
    throw InvalidArgument("chain Hamiltonian: basis size does not match the chain");
  }
  const auto bonds = chain_bonds(spec);
  return build_exchange_operator(bonds, std::move(basis));
}

SparseOperator build_composite_hamiltonian(const CompositeSpec& comp,
                                           std::shared_ptr<const SectorBasis> basis) {
  if (!basis || basis->n_sites() != comp.n_sites()) {
    throw InvalidArgument("composite Hamiltonian: basis size does not match N_L + N_R");
  }
  const auto bonds = composite_bonds(comp);
  return build_exchange_operator(bonds, std::move(basis));
}

}  // namespace kondo
