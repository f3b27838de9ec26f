#include "kondo/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kondo/errors.hpp"

namespace kondo {

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidArgument("linear fit needs at least two (x, y) pairs");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("linear fit needs distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

PhiFit fit_phi_scaling(std::span<const ScalingSample> samples, std::optional<double> alpha) {
  if (samples.size() < 3) throw InvalidArgument("Phi(N) fit needs at least 3 points");
  PhiFit fit;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& s : samples) {
    const double jsum = s.j_prime_left + s.j_prime_right;
    if (s.n_sites < 4 || !(jsum > 0.0) || !(s.j_m_opt > 0.0)) {
      throw InvalidArgument("Phi(N) sample needs N >= 4 and positive couplings");
    }
    const double l = std::log(s.n_sites / 2.0);
    fit.points.push_back({s.n_sites, s.j_m_opt / jsum, l * l});
    xs.push_back(l * l);
    ys.push_back(s.j_m_opt / jsum);
  }
  const auto line = fit_line(xs, ys);
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.r_squared = line.r_squared;
  if (alpha) fit.j_inf = line.slope * (*alpha) * (*alpha);
  return fit;
}

ScalingSample scaling_sample(const OptimizationResult& result) {
  return {result.left.n_sites + result.right.n_sites, result.j_m_opt, result.left.j_prime,
          result.right.j_prime};
}

std::vector<AlphaEstimate> alpha_from_table() {
  std::vector<AlphaEstimate> out;
  for (int n = 4; n <= 38; n += 2) {
    out.push_back({n, std::sqrt(impurity_coupling_for(n)) * std::log(n - 1.0)});
  }
  return out;
}

OptimizationResult optimize_pair(const ChainSpec& left, const ChainSpec& right,
                                 const SolverConfig& cfg, const SweepOptions& opts) {
  const QuenchProblem problem(left, right, cfg);
  if (opts.refined) return optimize_jm_refined(problem, *opts.refined, opts.t_max, opts.exec);
  return optimize_jm(problem, opts.jm_grid, opts.t_max, opts.exec);
}

std::vector<SplitRow> asymmetric_sweep(int n_sites, std::span<const int> splits,
                                       const SolverConfig& cfg, const SweepOptions& opts) {
  if (splits.empty()) throw InvalidArgument("asymmetric sweep needs at least one split");
  for (int nl : splits) {
    if (nl < 2 || nl > n_sites - 2 || nl % 2 != 0) {
      throw InvalidArgument("split N_L = " + std::to_string(nl) +
                            " must be even and within [2, N - 2]");
    }
    impurity_coupling_for(nl);
    impurity_coupling_for(n_sites - nl);
  }
  std::vector<SplitRow> rows;
  for (int nl : splits) {
    const int nr = n_sites - nl;
    const auto r = optimize_pair(tabulated_chain(nl), tabulated_chain(nr), cfg, opts);
    rows.push_back({nl, nr, static_cast<double>(nl) / n_sites, r.j_m_opt, r.t_star, r.e_max});
  }
  std::sort(rows.begin(), rows.end(),
            [](const SplitRow& a, const SplitRow& b) { return a.ratio < b.ratio; });
  return rows;
}

std::vector<RegimeRow> regime_comparison(std::span<const int> ns, double j2_kondo,
                                         double j2_dimer, const SolverConfig& cfg,
                                         const SweepOptions& opts) {
  const auto cell = [&](int n, double j2) {
    RegimeCell c;
    try {
      if (n % 4 != 0) {
        throw InvalidArgument("symmetric composite needs N divisible by 4, got " +
                              std::to_string(n));
      }
      const auto chain = tabulated_chain(n / 2, j2);
      c.result = optimize_pair(chain, chain, cfg, opts);
    } catch (const Error& e) {
      c.error = e.what();
    }
    return c;
  };
  std::vector<RegimeRow> rows;
  for (int n : ns) rows.push_back({n, cell(n, j2_kondo), cell(n, j2_dimer)});
  return rows;
}

}  // namespace kondo
