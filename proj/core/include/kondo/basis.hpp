#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kondo {

/// Bit configuration of a spin register: site k (1-based) is bit k-1,
/// a set bit is a spin up (sigma^z = +1).
using Config = std::uint64_t;

inline constexpr int kMaxSites = 62;

constexpr Config site_bit(int site) { return Config{1} << (site - 1); }

/// Ordered list of configurations with a fixed number of up spins, or the
/// full 2^n register when built with full(). Configurations are sorted by
/// their integer encoding and index_of() is the exact inverse of config().
class SectorBasis {
 public:
  static SectorBasis sector(int n_sites, int n_up);
  static SectorBasis full(int n_sites);

  int n_sites() const noexcept { return n_sites_; }
  /// Number of up spins; empty for the full register.
  std::optional<int> n_up() const noexcept { return n_up_; }
  bool is_full() const noexcept { return !n_up_.has_value(); }

  std::size_t size() const noexcept { return configs_.size(); }
  Config config(std::size_t index) const { return configs_[index]; }
  std::span<const Config> configurations() const noexcept { return configs_; }

  /// Ordinal of `c`, or nullopt when `c` is outside this basis.
  std::optional<std::size_t> index_of(Config c) const noexcept;

  bool same_space(const SectorBasis& other) const noexcept {
    return n_sites_ == other.n_sites_ && n_up_ == other.n_up_;
  }

 private:
  SectorBasis(int n_sites, std::optional<int> n_up, std::vector<Config> configs);

  int n_sites_;
  std::optional<int> n_up_;
  std::vector<Config> configs_;
  // binomial_[n * (n_sites + 1) + k] = C(n, k), used for combinadic ranking.
  std::vector<std::uint64_t> binomial_;
};

SectorBasis build_sector_basis(int n_sites, int n_up);

std::uint64_t binomial(int n, int k);

/// Parses a ket label such as "0011" where the first character is site 1.
Config config_from_ket(std::string_view ket);
std::string ket_from_config(Config c, int n_sites);

}  // namespace kondo
