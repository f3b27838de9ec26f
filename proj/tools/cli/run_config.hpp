#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "kondo/model.hpp"
#include "kondo/noise.hpp"
#include "kondo/solver.hpp"

namespace kondo::cli {

enum class Command { four_spin, quench, optimize, scaling, asymmetric, regimes, noise, router };
enum class Format { csv, json, svg };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitNumerical = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RouterNodeArg {
  std::string name;
  int n_sites = 0;
};

struct RunConfig {
  Command command = Command::quench;

  int n_left = 4;
  int n_right = 4;
  double j2 = 0.0;
  std::optional<double> j_prime_left;   // tabulated value when empty
  std::optional<double> j_prime_right;

  std::optional<double> jm;  // single coupling; otherwise the grid
  double jm_lo = 0.4;
  double jm_hi = 1.6;
  double jm_step = 0.02;
  bool refine = false;

  double t_max = 12.0;
  SolverConfig solver;

  std::vector<int> ns{8, 12, 16, 20};
  std::optional<double> alpha;
  int n_sites = 12;
  std::vector<int> splits{4, 6, 8};
  double j2_kondo = 0.0;
  double j2_dimer = 0.42;

  NoiseSpec noise;

  std::vector<RouterNodeArg> nodes;
  std::vector<std::pair<std::string, std::string>> pairs;

  std::uint64_t seed = 1;
  int threads = 1;
  Format format = Format::csv;
  std::string out;  // stdout when empty

  ChainSpec left_chain() const;
  ChainSpec right_chain() const;
  std::vector<double> jm_grid() const;

  /// Checks every field against the library's preconditions; throws UsageError.
  void validate() const;
};

/// Parses argv (argv[0] is the program name). Throws UsageError, or
/// returns std::nullopt after printing help/version to `out`.
std::optional<RunConfig> parse_config(int argc, const char* const* argv, std::ostream& out);

/// Flat key/value document accepted back by --config.
nlohmann::json to_json(const RunConfig& cfg);

std::string command_name(Command c);
std::string format_name(Format f);

}  // namespace kondo::cli
