#include "cli/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "kondo/errors.hpp"
#include "kondo/optimize.hpp"
#include "kondo/version.hpp"

namespace kondo::cli {

namespace {

const std::map<std::string, Command> kCommands{
    {"four-spin", Command::four_spin}, {"quench", Command::quench},
    {"optimize", Command::optimize},   {"scaling", Command::scaling},
    {"asymmetric", Command::asymmetric}, {"regimes", Command::regimes},
    {"noise", Command::noise},         {"router", Command::router}};

const std::map<std::string, Format> kFormats{
    {"csv", Format::csv}, {"json", Format::json}, {"svg", Format::svg}};

const std::map<std::string, NoiseKind> kNoiseKinds{
    {"dephasing", NoiseKind::dephasing}, {"random-field", NoiseKind::random_field}};

std::string json_scalar(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw CLI::ConfigError("config key '" + key + "' must hold a scalar or a list of scalars");
}

// TOML, or a flat JSON object (optionally nested under "run_config").
class TomlOrJsonConfig : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
      std::istringstream toml(text);
      return CLI::ConfigTOML::from_config(toml);
    }
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw CLI::ConfigError(std::string("invalid JSON config: ") + e.what());
    }
    if (doc.contains("run_config")) doc = doc.at("run_config");
    if (!doc.is_object()) throw CLI::ConfigError("JSON config must be an object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : doc.items()) {
      if (value.is_null()) continue;
      CLI::ConfigItem item;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(json_scalar(v, key));
      } else {
        item.inputs.push_back(json_scalar(value, key));
      }
      items.push_back(std::move(item));
    }
    return items;
  }
};

template <class E>
std::string names_of(const std::map<std::string, E>& m) {
  std::string out;
  for (const auto& [k, v] : m) out += (out.empty() ? "" : "|") + k;
  return out;
}

template <class E>
std::string key_of(const std::map<std::string, E>& m, E value) {
  for (const auto& [k, v] : m) {
    if (v == value) return k;
  }
  return {};
}

}  // namespace

std::string command_name(Command c) { return key_of(kCommands, c); }
std::string format_name(Format f) { return key_of(kFormats, f); }

ChainSpec RunConfig::left_chain() const {
  if (command == Command::four_spin) return {2, 1.0, 0.0, j_prime_left.value_or(1.0)};
  return {n_left, 1.0, j2, j_prime_left ? *j_prime_left : impurity_coupling_for(n_left)};
}

ChainSpec RunConfig::right_chain() const {
  if (command == Command::four_spin) return {2, 1.0, 0.0, j_prime_right.value_or(1.0)};
  return {n_right, 1.0, j2, j_prime_right ? *j_prime_right : impurity_coupling_for(n_right)};
}

std::vector<double> RunConfig::jm_grid() const {
  if (jm) return {*jm};
  return linear_grid(jm_lo, jm_hi, jm_step);
}

void RunConfig::validate() const {
  try {
    solver.validate();
    noise.validate();
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw UsageError("--t-max must be positive");
    if (threads < 0) throw UsageError("--threads must be >= 0");
    if (jm && !(*jm >= 0.0)) throw UsageError("--jm must be >= 0");
    if (!jm && !(jm_step > 0.0 && jm_lo >= 0.0 && jm_hi >= jm_lo)) {
      throw UsageError("j_m grid needs 0 <= --jm-lo <= --jm-hi and --jm-step > 0");
    }
    switch (command) {
      case Command::four_spin:
      case Command::quench:
      case Command::optimize:
      case Command::noise: {
        for (int n : {n_left, n_right}) {
          if (command != Command::four_spin && (n < 2 || n % 2 != 0)) {
            throw UsageError("chain lengths must be even and >= 2, got " + std::to_string(n));
          }
        }
        const CompositeSpec comp{left_chain(), right_chain(), jm.value_or(0.0)};
        comp.validate();
        if (command == Command::quench && !jm) throw UsageError("quench needs --jm");
        if (command == Command::noise && !jm) throw UsageError("noise needs --jm");
        if (command == Command::noise && noise.kind == NoiseKind::random_field &&
            comp.n_sites() > kMaxFullSpaceSites) {
          throw UsageError("random-field noise runs in the full register; N must be <= " +
                           std::to_string(kMaxFullSpaceSites));
        }
        break;
      }
      case Command::scaling:
        if (ns.size() < 3) throw UsageError("scaling needs at least three --ns values");
        [[fallthrough]];
      case Command::regimes:
        if (ns.empty()) throw UsageError("--ns is empty");
        for (int n : ns) {
          if (n < 4 || n % 4 != 0) throw UsageError("--ns values must be multiples of 4");
          impurity_coupling_for(n / 2);
        }
        break;
      case Command::asymmetric:
        if (splits.empty()) throw UsageError("--splits is empty");
        for (int nl : splits) {
          if (nl < 2 || nl > n_sites - 2 || nl % 2 != 0) {
            throw UsageError("split " + std::to_string(nl) + " must be even and in [2, N-2]");
          }
          impurity_coupling_for(nl);
          impurity_coupling_for(n_sites - nl);
        }
        break;
      case Command::router: {
        if (nodes.empty() || pairs.empty()) throw UsageError("router needs --node and --pair");
        std::set<std::string> seen;
        for (const auto& n : nodes) {
          if (!seen.insert(n.name).second) throw UsageError("duplicate node " + n.name);
          ChainSpec{n.n_sites, 1.0, j2, impurity_coupling_for(n.n_sites)}.validate();
        }
        std::set<std::string> used;
        for (const auto& [a, b] : pairs) {
          for (const auto& x : {a, b}) {
            if (!seen.count(x)) throw UsageError("pair names unknown node " + x);
            if (!used.insert(x).second) throw UsageError("node " + x + " is in more than one pair");
          }
        }
        break;
      }
    }
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  } catch (const NotFound& e) {
    throw UsageError(e.what());
  }
}

std::optional<RunConfig> parse_config(int argc, const char* const* argv, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"Quench dynamics of coupled Kondo spin chains", "kondo-router"};
  app.config_formatter(std::make_shared<TomlOrJsonConfig>());
  app.set_config("--config", "", "TOML or JSON file; flags override its values");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(0, 1);

  std::string command;
  app.add_option("--command", command, "Subcommand, for config files")
      ->check(CLI::IsMember(kCommands));
  for (const auto& [name, c] : kCommands) {
    app.add_subcommand(name, "Run the " + name + " experiment")->fallthrough();
  }

  std::optional<double> j_prime_left, j_prime_right, jm, alpha;
  app.add_option("--n-left", cfg.n_left, "Sites in the left chain")->capture_default_str();
  app.add_option("--n-right", cfg.n_right, "Sites in the right chain")->capture_default_str();
  app.add_option("--j2", cfg.j2, "Next-nearest coupling J2/J1")->capture_default_str();
  app.add_option("--j-prime-left", j_prime_left, "Left impurity coupling (default: table)");
  app.add_option("--j-prime-right", j_prime_right, "Right impurity coupling (default: table)");
  app.add_option("--jm", jm, "Single junction coupling instead of a grid");
  app.add_option("--jm-lo", cfg.jm_lo, "Grid start")->capture_default_str();
  app.add_option("--jm-hi", cfg.jm_hi, "Grid end")->capture_default_str();
  app.add_option("--jm-step", cfg.jm_step, "Grid step")->capture_default_str();
  app.add_flag("--refine", cfg.refine, "Coarse 0.05 scan, then 0.01 around the best point");
  app.add_option("--t-max", cfg.t_max, "Evolution time")->capture_default_str();
  app.add_option("--dt", cfg.solver.dt, "Sampling step")->capture_default_str();
  app.add_option("--krylov-dim", cfg.solver.krylov_dim, "Maximum Krylov dimension")
      ->capture_default_str();
  app.add_option("--lanczos-tol", cfg.solver.lanczos_tol, "Ground-state residual tolerance")
      ->capture_default_str();
  app.add_option("--step-tol", cfg.solver.step_tol, "Propagation error per step")
      ->capture_default_str();
  app.add_option("--ns", cfg.ns, "Composite sizes for scaling/regimes")->delimiter(',')
      ->capture_default_str();
  app.add_option("--alpha", alpha, "Screening constant for the asymptotic coupling");
  app.add_option("--n-sites", cfg.n_sites, "Composite size for asymmetric")->capture_default_str();
  app.add_option("--splits", cfg.splits, "Left chain sizes for asymmetric")->delimiter(',')
      ->capture_default_str();
  app.add_option("--j2-kondo", cfg.j2_kondo, "J2 of the Kondo column")->capture_default_str();
  app.add_option("--j2-dimer", cfg.j2_dimer, "J2 of the dimer column")->capture_default_str();

  std::string noise_kind = "dephasing";
  app.add_option("--noise-kind", noise_kind, "Noise model")
      ->check(CLI::IsMember(kNoiseKinds))->capture_default_str();
  app.add_option("--gamma", cfg.noise.gamma, "Dephasing rate per site")->capture_default_str();
  app.add_option("--h-mag", cfg.noise.h_mag, "Random field magnitude")->capture_default_str();
  app.add_flag("--gaussian-magnitude", cfg.noise.gaussian_magnitude,
               "Draw field magnitudes from a Gaussian of width --h-mag");
  app.add_option("--samples", cfg.noise.n_samples, "Trajectories or realisations")
      ->capture_default_str();

  std::vector<std::string> node_args, pair_args;
  app.add_option("--node", node_args, "Router node NAME=SITES (repeatable)");
  app.add_option("--pair", pair_args, "Router pair A:B (repeatable)");

  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads, 0 = all cores")->capture_default_str();
  std::string format = "csv";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember(kFormats))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const auto subs = app.get_subcommands();
  if (!subs.empty()) {
    command = subs.front()->get_name();
  }
  if (command.empty()) throw UsageError("no subcommand given (one of " + names_of(kCommands) + ")");
  cfg.command = kCommands.at(command);
  cfg.format = kFormats.at(format);
  cfg.noise.kind = kNoiseKinds.at(noise_kind);
  cfg.noise.seed = cfg.seed;
  cfg.j_prime_left = j_prime_left;
  cfg.j_prime_right = j_prime_right;
  cfg.jm = jm;
  cfg.alpha = alpha;

  for (const auto& s : node_args) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--node expects NAME=SITES, got " + s);
    try {
      std::size_t used = 0;
      const int n = std::stoi(s.substr(eq + 1), &used);
      if (used != s.size() - eq - 1) throw std::invalid_argument(s);
      cfg.nodes.push_back({s.substr(0, eq), n});
    } catch (const std::logic_error&) {
      throw UsageError("--node expects NAME=SITES, got " + s);
    }
  }
  for (const auto& s : pair_args) {
    const auto colon = s.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == s.size()) {
      throw UsageError("--pair expects A:B, got " + s);
    }
    cfg.pairs.emplace_back(s.substr(0, colon), s.substr(colon + 1));
  }

  cfg.validate();
  return cfg;
}

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["command"] = command_name(cfg.command);
  j["n-left"] = cfg.n_left;
  j["n-right"] = cfg.n_right;
  j["j2"] = cfg.j2;
  if (cfg.j_prime_left) j["j-prime-left"] = *cfg.j_prime_left;
  if (cfg.j_prime_right) j["j-prime-right"] = *cfg.j_prime_right;
  if (cfg.jm) j["jm"] = *cfg.jm;
  j["jm-lo"] = cfg.jm_lo;
  j["jm-hi"] = cfg.jm_hi;
  j["jm-step"] = cfg.jm_step;
  j["refine"] = cfg.refine;
  j["t-max"] = cfg.t_max;
  j["dt"] = cfg.solver.dt;
  j["krylov-dim"] = cfg.solver.krylov_dim;
  j["lanczos-tol"] = cfg.solver.lanczos_tol;
  j["step-tol"] = cfg.solver.step_tol;
  j["ns"] = cfg.ns;
  if (cfg.alpha) j["alpha"] = *cfg.alpha;
  j["n-sites"] = cfg.n_sites;
  j["splits"] = cfg.splits;
  j["j2-kondo"] = cfg.j2_kondo;
  j["j2-dimer"] = cfg.j2_dimer;
  j["noise-kind"] = key_of(kNoiseKinds, cfg.noise.kind);
  j["gamma"] = cfg.noise.gamma;
  j["h-mag"] = cfg.noise.h_mag;
  j["gaussian-magnitude"] = cfg.noise.gaussian_magnitude;
  j["samples"] = cfg.noise.n_samples;
  if (!cfg.nodes.empty()) {
    auto& nodes = j["node"] = nlohmann::json::array();
    for (const auto& n : cfg.nodes) nodes.push_back(n.name + "=" + std::to_string(n.n_sites));
  }
  if (!cfg.pairs.empty()) {
    auto& pairs = j["pair"] = nlohmann::json::array();
    for (const auto& [a, b] : cfg.pairs) pairs.push_back(a + ":" + b);
  }
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["format"] = format_name(cfg.format);
  return j;
}

}  // namespace kondo::cli
