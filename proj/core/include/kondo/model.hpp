#pragma once

#include <memory>
#include <vector>

#include "kondo/basis.hpp"
#include "kondo/sparse_operator.hpp"

namespace kondo {

/// J2/J1 separating the gapless Kondo regime from the dimerised regime.
inline constexpr double kCriticalJ2 = 0.2412;

enum class Regime { kondo, critical, dimer };

/// One Kondo chain: site 1 is the impurity, coupled by j_prime.
struct ChainSpec {
  int n_sites = 2;
  double j1 = 1.0;       // energy unit
  double j2 = 0.0;       // J2 / J1
  double j_prime = 1.0;  // J'_k

  void validate() const;
  Regime regime() const noexcept;
  double j2_energy() const noexcept { return j2 * j1; }
};

/// Two chains joined at their far ends by the junction coupling j_m.
///
/// Global site numbering: the left chain occupies sites 1..N_L with its
/// impurity at 1; the right chain occupies N_L+1..N with its impurity at N,
/// i.e. right-chain site r sits at global site N + 1 - r.
struct CompositeSpec {
  ChainSpec left;
  ChainSpec right;
  double j_m = 0.0;

  void validate() const;
  int n_sites() const noexcept { return left.n_sites + right.n_sites; }
  int left_global_site(int i) const noexcept { return i; }
  int right_global_site(int r) const noexcept { return n_sites() + 1 - r; }
};

/// Impurity coupling that tunes the Kondo screening length of an
/// `n_sites` chain to n_sites - 1 (tabulated for even lengths 4..38).
/// Throws NotFound for lengths outside the table.
double impurity_coupling_for(int n_sites);

/// A Kondo-regime chain with its tabulated impurity coupling.
ChainSpec tabulated_chain(int n_sites, double j2 = 0.0);

/// Bonds of one chain with internal site i mapped to global site
/// `offset + sign * i` (sign = +1 or -1).
std::vector<Bond> chain_bonds(const ChainSpec& spec, int offset = 0, int sign = 1);
std::vector<Bond> junction_bonds(const CompositeSpec& comp);
std::vector<Bond> composite_bonds(const CompositeSpec& comp);

SparseOperator build_chain_hamiltonian(const ChainSpec& spec,
                                       std::shared_ptr<const SectorBasis> basis);
SparseOperator build_composite_hamiltonian(const CompositeSpec& comp,
                                           std::shared_ptr<const SectorBasis> basis);

}  // namespace kondo
