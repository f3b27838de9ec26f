#include "cli/commands.hpp"

#include <cmath>

#include "cli/emit.hpp"
#include "cli/svg.hpp"
#include "kondo/errors.hpp"
#include "kondo/foursite.hpp"
#include "kondo/noise.hpp"
#include "kondo/version.hpp"

namespace kondo::cli {

namespace {

struct Output {
  std::string csv;
  nlohmann::json result;
  std::string svg;
};

SweepOptions sweep_options(const RunConfig& cfg) {
  SweepOptions opts;
  opts.jm_grid = cfg.jm_grid();
  if (cfg.refine) opts.refined = RefinedSearch{cfg.jm_lo, cfg.jm_hi, 0.05, 0.01};
  opts.t_max = cfg.t_max;
  opts.exec = Execution{cfg.threads};
  return opts;
}

std::string trace_svg(const std::string& title, const std::vector<Series>& series) {
  return line_plot(title, "t J1", "concurrence E(t)", series);
}

Output quench_output(const QuenchTrace& trace, const std::string& title) {
  return {trace_csv(trace), to_json(trace),
          trace_svg(title, {{"", trace.times, trace.concurrence}})};
}

Output do_four_spin(const RunConfig& cfg) {
  const auto left = cfg.left_chain();
  const auto right = cfg.right_chain();
  const double jm = cfg.jm.value_or(left.j_prime + right.j_prime);
  const auto trace = run_quench({left, right, jm}, cfg.t_max, cfg.solver);
  const auto opt = foursite::four_spin_optimal(left.j_prime, right.j_prime);
  const foursite::FourSpinParams params{left.j_prime, right.j_prime, jm};

  Output o = quench_output(trace, "four-spin quench, J_m = " + fmt12(jm));
  o.result["optimal"] = {{"j_m", opt.j_m}, {"t_star", opt.t_star}};
  o.result["resonant"] = params.resonant();
  if (params.resonant()) {
    std::vector<double> closed;
    for (double t : trace.times) closed.push_back(foursite::four_spin_concurrence(jm, t));
    o.svg = trace_svg("four-spin quench, J_m = " + fmt12(jm),
                      {{"numerical", trace.times, trace.concurrence},
                       {"closed form", trace.times, closed}});
  }
  return o;
}

Output do_quench(const RunConfig& cfg) {
  const CompositeSpec comp{cfg.left_chain(), cfg.right_chain(), *cfg.jm};
  const auto trace = run_quench(comp, cfg.t_max, cfg.solver);
  return quench_output(trace, "N = " + std::to_string(comp.n_sites()) + ", J_m = " + fmt12(comp.j_m));
}

Output do_optimize(const RunConfig& cfg) {
  const QuenchProblem problem(cfg.left_chain(), cfg.right_chain(), cfg.solver);
  const auto opts = sweep_options(cfg);
  const auto r = opts.refined ? optimize_jm_refined(problem, *opts.refined, cfg.t_max, opts.exec)
                              : optimize_jm(problem, opts.jm_grid, cfg.t_max, opts.exec);
  Series s{"", {}, {}};
  for (const auto& p : r.grid) {
    s.x.push_back(p.j_m);
    s.y.push_back(p.peak ? p.peak->e_max : std::nan(""));
  }
  return {optimization_csv(r), to_json(r), line_plot("first-peak concurrence", "J_m", "E_m", {s})};
}

Output do_scaling(const RunConfig& cfg) {
  const auto opts = sweep_options(cfg);
  std::vector<OptimizationResult> runs;
  std::vector<ScalingSample> samples;
  for (int n : cfg.ns) {
    const auto chain = tabulated_chain(n / 2, cfg.j2);
    runs.push_back(optimize_pair(chain, chain, cfg.solver, opts));
    samples.push_back(scaling_sample(runs.back()));
  }
  const auto fit = fit_phi_scaling(samples, cfg.alpha);
  nlohmann::json runs_json = nlohmann::json::array();
  for (const auto& r : runs) runs_json.push_back(to_json(r));
  nlohmann::json alpha = nlohmann::json::array();
  for (const auto& a : alpha_from_table()) alpha.push_back({{"N", a.n_sites}, {"alpha", a.alpha}});

  Series pts{"Phi(N)", {}, {}};
  Series line{"fit", {}, {}};
  for (const auto& p : fit.points) {
    pts.x.push_back(p.log2_half);
    pts.y.push_back(p.phi);
    line.x.push_back(p.log2_half);
    line.y.push_back(fit.slope * p.log2_half + fit.intercept);
  }
  return {scaling_csv(runs, fit),
          {{"runs", runs_json}, {"fit", to_json(fit)}, {"alpha_table", alpha}},
          line_plot("Phi(N) scaling", "log^2(N/2)", "J_m / (J'_L + J'_R)", {pts, line})};
}

Output do_asymmetric(const RunConfig& cfg) {
  const auto rows = asymmetric_sweep(cfg.n_sites, cfg.splits, cfg.solver, sweep_options(cfg));
  Series e{"", {}, {}};
  for (const auto& r : rows) {
    e.x.push_back(r.ratio);
    e.y.push_back(r.e_max);
  }
  return {asymmetric_csv(rows), to_json(rows),
          line_plot("N = " + std::to_string(cfg.n_sites) + " splits", "N_L / N", "E_m", {e})};
}

Output do_regimes(const RunConfig& cfg) {
  const auto rows = regime_comparison(cfg.ns, cfg.j2_kondo, cfg.j2_dimer, cfg.solver,
                                      sweep_options(cfg));
  Series k{"Kondo", {}, {}};
  Series d{"dimer", {}, {}};
  for (const auto& r : rows) {
    k.x.push_back(r.n_sites);
    d.x.push_back(r.n_sites);
    k.y.push_back(r.kondo.result ? r.kondo.result->e_max : std::nan(""));
    d.y.push_back(r.dimer.result ? r.dimer.result->e_max : std::nan(""));
  }
  return {regimes_csv(rows), to_json(rows), line_plot("regime comparison", "N", "E_m", {k, d})};
}

Output do_noise(const RunConfig& cfg) {
  const CompositeSpec comp{cfg.left_chain(), cfg.right_chain(), *cfg.jm};
  const Execution exec{cfg.threads};
  const auto trace = cfg.noise.kind == NoiseKind::dephasing
                         ? run_dephasing(comp, cfg.noise, cfg.t_max, cfg.solver, exec)
                         : run_random_field(comp, cfg.noise, cfg.t_max, cfg.solver, exec);
  const auto clean = run_quench(comp, cfg.t_max, cfg.solver);
  Output o{trace_csv(trace), to_json(trace),
           trace_svg("noise, N = " + std::to_string(comp.n_sites()),
                     {{"noisy", trace.times, trace.concurrence},
                      {"noiseless", clean.times, clean.concurrence}})};
  o.result["noise"] = {{"kind", cfg.noise.kind == NoiseKind::dephasing ? "dephasing" : "random-field"},
                       {"gamma", cfg.noise.gamma},
                       {"h_mag", cfg.noise.h_mag},
                       {"gaussian_magnitude", cfg.noise.gaussian_magnitude},
                       {"n_samples", cfg.noise.n_samples},
                       {"seed", cfg.noise.seed}};
  try {
    const auto p = extract_peak(clean);
    o.result["noiseless_peak"] = {{"t_star", p.t_star}, {"e_max", p.e_max}};
    if (!o.result["peak"].is_null()) {
      o.result["relative_reduction"] = 1.0 - o.result["peak"]["e_max"].get<double>() / p.e_max;
    }
  } catch (const NoPeakError&) {
    o.result["noiseless_peak"] = nullptr;
  }
  return o;
}

Output do_router(const RunConfig& cfg) {
  RouterPlan plan;
  for (const auto& n : cfg.nodes) plan.nodes.push_back({n.name, tabulated_chain(n.n_sites, cfg.j2)});
  for (const auto& [a, b] : cfg.pairs) plan.pairs.push_back({a, b, cfg.jm_grid()});
  const auto routed = route(plan, cfg.t_max, cfg.solver, Execution{cfg.threads});
  std::vector<Series> series;
  for (const auto& [pair, r] : routed) {
    Series s{pair.first + "-" + pair.second, {}, {}};
    for (const auto& p : r.grid) {
      s.x.push_back(p.j_m);
      s.y.push_back(p.peak ? p.peak->e_max : std::nan(""));
    }
    series.push_back(std::move(s));
  }
  return {router_csv(routed), to_json(routed), line_plot("router pairs", "J_m", "E_m", series)};
}

Output dispatch(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::four_spin: return do_four_spin(cfg);
    case Command::quench: return do_quench(cfg);
    case Command::optimize: return do_optimize(cfg);
    case Command::scaling: return do_scaling(cfg);
    case Command::asymmetric: return do_asymmetric(cfg);
    case Command::regimes: return do_regimes(cfg);
    case Command::noise: return do_noise(cfg);
    case Command::router: return do_router(cfg);
  }
  throw UsageError("unknown command");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    const Output o = dispatch(cfg);
    std::string content;
    switch (cfg.format) {
      case Format::csv: content = o.csv; break;
      case Format::svg: content = o.svg; break;
      case Format::json: {
        const nlohmann::json doc{{"version", std::string(kVersion)},
                                 {"command", command_name(cfg.command)},
                                 {"seed", cfg.seed},
                                 {"run_config", to_json(cfg)},
                                 {"result", o.result}};
        content = doc.dump(2) + '\n';
        break;
      }
    }
    write_output(cfg.out, content, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ExclusivityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_config(argc, argv, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for the option list.\n";
    return kExitUsage;
  }
  if (!cfg) return kExitOk;
  return run(*cfg, out, err);
}

}  // namespace kondo::cli
