#include "kondo/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kondo/errors.hpp"

namespace kondo {

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw InvalidArgument("grid needs step > 0 and hi >= lo");
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  grid.reserve(count);
  // Round to 12 decimals so grids built from different origins share points.
  for (std::size_t i = 0; i < count; ++i) {
    grid.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return grid;
}

std::vector<double> default_jm_grid() { return linear_grid(0.4, 1.6, 0.02); }

namespace {

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw InvalidArgument("j_m grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0)) throw InvalidArgument("j_m grid values must be >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw InvalidArgument("j_m grid must be strictly ascending");
  }
}

std::vector<GridPoint> scan(const QuenchProblem& problem, std::span<const double> grid,
                            double t_max, const Execution& exec) {
  std::vector<GridPoint> points(grid.size());
  parallel_for(grid.size(), exec, [&](std::size_t i) {
    points[i].j_m = grid[i];
    try {
      const auto trace = problem.run(grid[i], t_max, StopRule::after_first_peak);
      const double scale = std::max(std::abs(trace.energy.front()), 1.0);
      for (std::size_t k = 0; k < trace.size(); ++k) {
        points[i].energy_drift =
            std::max(points[i].energy_drift, std::abs(trace.energy[k] - trace.energy.front()) / scale);
        points[i].norm_drift = std::max(points[i].norm_drift, std::abs(trace.norm[k] - 1.0));
      }
      points[i].peak = extract_peak(trace);
    } catch (const NoPeakError& e) {
      points[i].error = e.what();
    }
  });
  return points;
}

OptimizationResult select(const QuenchProblem& problem, std::vector<GridPoint> points) {
  const GridPoint* best = nullptr;
  for (const auto& p : points) {
    if (p.peak && (!best || p.peak->e_max > best->peak->e_max)) best = &p;
  }
  if (!best) throw OptimizationError("no j_m on the grid produced a concurrence peak");
  OptimizationResult r;
  r.j_m_opt = best->j_m;
  r.t_star = best->peak->t_star;
  r.e_max = best->peak->e_max;
  r.left = problem.left();
  r.right = problem.right();
  r.grid = std::move(points);
  return r;
}

}  // namespace

OptimizationResult optimize_jm(const QuenchProblem& problem, std::span<const double> jm_grid,
                               double t_max, const Execution& exec) {
  check_grid(jm_grid);
  return select(problem, scan(problem, jm_grid, t_max, exec));
}

OptimizationResult optimize_jm(const ChainSpec& left, const ChainSpec& right,
                               std::span<const double> jm_grid, double t_max,
                               const SolverConfig& cfg, const Execution& exec) {
  check_grid(jm_grid);
  const QuenchProblem problem(left, right, cfg);
  return optimize_jm(problem, jm_grid, t_max, exec);
}

OptimizationResult optimize_jm_refined(const QuenchProblem& problem, const RefinedSearch& search,
                                       double t_max, const Execution& exec) {
  if (!(search.fine_step > 0.0) || !(search.coarse_step >= search.fine_step)) {
    throw InvalidArgument("refined search needs coarse_step >= fine_step > 0");
  }
  const auto coarse = linear_grid(search.lo, search.hi, search.coarse_step);
  auto points = scan(problem, coarse, t_max, exec);
  const auto first = select(problem, points);

  const double lo = std::max(search.lo, first.j_m_opt - search.coarse_step);
  const double hi = std::min(search.hi, first.j_m_opt + search.coarse_step);
  std::vector<double> fine;
  for (double jm : linear_grid(lo, hi, search.fine_step)) {
    const bool seen = std::any_of(points.begin(), points.end(), [jm](const GridPoint& p) {
      return std::abs(p.j_m - jm) < 1e-9;
    });
    if (!seen) fine.push_back(jm);
  }
  auto extra = scan(problem, fine, t_max, exec);
  points.insert(points.end(), std::make_move_iterator(extra.begin()),
                std::make_move_iterator(extra.end()));
  std::sort(points.begin(), points.end(),
            [](const GridPoint& a, const GridPoint& b) { return a.j_m < b.j_m; });
  return select(problem, std::move(points));
}

}  // namespace kondo
