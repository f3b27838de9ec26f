#include "cli/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli/run_config.hpp"
#include "kondo/errors.hpp"

namespace kondo::cli {

namespace {

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string cell(const RegimeCell& c, bool want_e) {
  if (!c.result) return "";
  return fmt12(want_e ? c.result->e_max : c.result->t_star);
}

}  // namespace

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string trace_csv(const QuenchTrace& trace) {
  std::string out = "t,concurrence,energy,norm\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out += fmt12(trace.times[i]) + ',' + fmt12(trace.concurrence[i]) + ',' +
           fmt12(trace.energy[i]) + ',' + fmt12(trace.norm[i]) + '\n';
  }
  return out;
}

std::string optimization_csv(const OptimizationResult& r) {
  std::string out = "j_m,t_star,e_max\n";
  for (const auto& p : r.grid) {
    out += fmt12(p.j_m) + ',' + (p.peak ? fmt12(p.peak->t_star) : "") + ',' +
           (p.peak ? fmt12(p.peak->e_max) : "") + '\n';
  }
  return out;
}

std::string scaling_csv(const std::vector<OptimizationResult>& runs, const PhiFit& fit) {
  std::string out = "N,j_m_opt,t_star,e_max,phi,log2_half\n";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    const auto& p = fit.points.at(i);
    out += std::to_string(p.n_sites) + ',' + fmt12(r.j_m_opt) + ',' + fmt12(r.t_star) + ',' +
           fmt12(r.e_max) + ',' + fmt12(p.phi) + ',' + fmt12(p.log2_half) + '\n';
  }
  return out;
}

std::string asymmetric_csv(const std::vector<SplitRow>& rows) {
  std::string out = "N_L,N_R,ratio,j_m_opt,t_star,e_max\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n_left) + ',' + std::to_string(r.n_right) + ',' + fmt12(r.ratio) +
           ',' + fmt12(r.j_m_opt) + ',' + fmt12(r.t_star) + ',' + fmt12(r.e_max) + '\n';
  }
  return out;
}

std::string regimes_csv(const std::vector<RegimeRow>& rows) {
  std::string out = "N,E_m_K,E_m_D,t_star_K,t_star_D\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n_sites) + ',' + cell(r.kondo, true) + ',' + cell(r.dimer, true) +
           ',' + cell(r.kondo, false) + ',' + cell(r.dimer, false) + '\n';
  }
  return out;
}

std::string router_csv(const RouteResult& routed) {
  std::string out = "a,b,j_m_opt,t_star,e_max\n";
  for (const auto& [pair, r] : routed) {
    out += pair.first + ',' + pair.second + ',' + fmt12(r.j_m_opt) + ',' + fmt12(r.t_star) +
           ',' + fmt12(r.e_max) + '\n';
  }
  return out;
}

nlohmann::json to_json(const ChainSpec& c) {
  return {{"n_sites", c.n_sites}, {"j1", c.j1}, {"j2", c.j2}, {"j_prime", c.j_prime}};
}

nlohmann::json to_json(const CompositeSpec& c) {
  return {{"left", to_json(c.left)}, {"right", to_json(c.right)}, {"j_m", c.j_m}};
}

nlohmann::json to_json(const SolverConfig& c) {
  return {{"lanczos_tol", c.lanczos_tol}, {"lanczos_max_iter", c.lanczos_max_iter},
          {"krylov_dim", c.krylov_dim},   {"step_tol", c.step_tol},
          {"dt", c.dt},                   {"seed", c.seed}};
}

nlohmann::json to_json(const QuenchTrace& t) {
  nlohmann::json j{{"spec", to_json(t.spec)},
                   {"config", to_json(t.config)},
                   {"initial_spin_squared", t.initial_spin_squared},
                   {"near_degenerate_ground_state", t.near_degenerate_ground_state},
                   {"times", t.times},
                   {"concurrence", t.concurrence},
                   {"energy", t.energy},
                   {"norm", t.norm}};
  try {
    const auto p = extract_peak(t);
    j["peak"] = {{"t_star", p.t_star}, {"e_max", p.e_max}};
  } catch (const NoPeakError&) {
    j["peak"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const OptimizationResult& r) {
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& p : r.grid) {
    nlohmann::json g{{"j_m", p.j_m}, {"energy_drift", p.energy_drift}, {"norm_drift", p.norm_drift}};
    if (p.peak) {
      g["t_star"] = p.peak->t_star;
      g["e_max"] = p.peak->e_max;
    } else {
      g["error"] = p.error;
    }
    grid.push_back(std::move(g));
  }
  return {{"left", to_json(r.left)}, {"right", to_json(r.right)}, {"j_m_opt", r.j_m_opt},
          {"t_star", r.t_star},      {"e_max", r.e_max},          {"grid", std::move(grid)}};
}

nlohmann::json to_json(const PhiFit& f) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : f.points) {
    pts.push_back({{"N", p.n_sites}, {"phi", p.phi}, {"log2_half", p.log2_half}});
  }
  nlohmann::json j{{"points", std::move(pts)},
                   {"slope", f.slope},
                   {"intercept", f.intercept},
                   {"r_squared", number(f.r_squared)}};
  if (f.j_inf) j["j_inf"] = *f.j_inf;
  return j;
}

nlohmann::json to_json(const std::vector<SplitRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"n_left", r.n_left}, {"n_right", r.n_right}, {"ratio", r.ratio},
                   {"j_m_opt", r.j_m_opt}, {"t_star", r.t_star}, {"e_max", r.e_max}});
  }
  return out;
}

nlohmann::json to_json(const std::vector<RegimeRow>& rows) {
  const auto cell_json = [](const RegimeCell& c) -> nlohmann::json {
    if (c.result) return to_json(*c.result);
    return {{"error", c.error}};
  };
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"N", r.n_sites}, {"kondo", cell_json(r.kondo)}, {"dimer", cell_json(r.dimer)}});
  }
  return out;
}

nlohmann::json to_json(const RouteResult& routed) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [pair, r] : routed) {
    auto j = to_json(r);
    j["a"] = pair.first;
    j["b"] = pair.second;
    out.push_back(std::move(j));
  }
  return out;
}

void write_output(const std::string& path, const std::string& content, std::ostream& fallback) {
  if (path.empty()) {
    fallback << content;
    fallback.flush();
    if (!fallback) throw IoError("cannot write to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << content;
  f.close();
  if (!f) throw IoError("failed writing " + path);
}

}  // namespace kondo::cli
