#include "kondo/basis.hpp"

#include <bit>
#include <string>

#include "kondo/errors.hpp"

namespace kondo {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

SectorBasis::SectorBasis(int n_sites, std::optional<int> n_up, std::vector<Config> configs)
    : n_sites_(n_sites), n_up_(n_up), configs_(std::move(configs)) {
  if (n_up_) {
    const int stride = n_sites_ + 1;
    binomial_.assign(static_cast<std::size_t>(stride * stride), 0);
    for (int n = 0; n <= n_sites_; ++n) {
      for (int k = 0; k <= n; ++k) binomial_[n * stride + k] = binomial(n, k);
    }
  }
}

SectorBasis SectorBasis::sector(int n_sites, int n_up) {
  if (n_sites < 1 || n_sites > kMaxSites) {
    throw InvalidArgument("sector basis: n_sites must lie in [1, " +
                          std::to_string(kMaxSites) + "], got " + std::to_string(n_sites));
  }
  if (n_up < 0 || n_up > n_sites) {
    throw InvalidArgument("sector basis: n_up " + std::to_string(n_up) +
                          " outside [0, " + std::to_string(n_sites) + "]");
  }
  std::vector<Config> configs;
  configs.reserve(binomial(n_sites, n_up));
  if (n_up == 0) {
    configs.push_back(0);
  } else {
    // Gosper's hack walks fixed-popcount integers in increasing order.
    const Config limit = Config{1} << n_sites;
    Config c = (Config{1} << n_up) - 1;
    while (c < limit) {
      configs.push_back(c);
      const Config lowest = c & (~c + 1);
      const Config ripple = c + lowest;
      c = (((ripple ^ c) >> 2) / lowest) | ripple;
    }
  }
  return SectorBasis(n_sites, n_up, std::move(configs));
}

SectorBasis SectorBasis::full(int n_sites) {
  if (n_sites < 1 || n_sites > 30) {
    throw CapacityError("full basis: n_sites must lie in [1, 30], got " +
                        std::to_string(n_sites));
  }
  std::vector<Config> configs(std::size_t{1} << n_sites);
  for (std::size_t i = 0; i < configs.size(); ++i) configs[i] = i;
  return SectorBasis(n_sites, std::nullopt, std::move(configs));
}

std::optional<std::size_t> SectorBasis::index_of(Config c) const noexcept {
  if (n_sites_ < 64 && (c >> n_sites_) != 0) return std::nullopt;
  if (!n_up_) return static_cast<std::size_t>(c);
  if (std::popcount(c) != *n_up_) return std::nullopt;
  // Colexicographic rank: sum over set bits of C(position, ordinal + 1).
  const int stride = n_sites_ + 1;
  std::size_t rank = 0;
  int ordinal = 1;
  while (c != 0) {
    const int pos = std::countr_zero(c);
    rank += binomial_[pos * stride + ordinal];
    ++ordinal;
    c &= c - 1;
  }
  return rank;
}

SectorBasis build_sector_basis(int n_sites, int n_up) {
  return SectorBasis::sector(n_sites, n_up);
}

Config config_from_ket(std::string_view ket) {
  if (ket.empty() || ket.size() > static_cast<std::size_t>(kMaxSites)) {
    throw InvalidArgument("ket label must have 1.." + std::to_string(kMaxSites) + " sites");
  }
  Config c = 0;
  for (std::size_t i = 0; i < ket.size(); ++i) {
    if (ket[i] == '1') {
      c |= Config{1} << i;
    } else if (ket[i] != '0') {
      throw InvalidArgument("ket label may only contain 0 and 1: " + std::string(ket));
    }
  }
  return c;
}

std::string ket_from_config(Config c, int n_sites) {
  std::string ket(static_cast<std::size_t>(n_sites), '0');
  for (int i = 0; i < n_sites; ++i) {
    if ((c >> i) & 1U) ket[static_cast<std::size_t>(i)] = '1';
  }
  return ket;
}

}  // namespace kondo
