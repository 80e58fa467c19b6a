#pragma once

#include <functional>
#include <vector>

namespace qkd {

struct OptimizerOptions {
  int coarse_points = 61;
  int dense_factor = 20;       // dense grid size = coarse_points * dense_factor
  double rel_tol = 1e-9;       // on the log-scale bracket width
  int max_iterations = 200;
};

struct GridSample {
  double x;
  double value;
};

struct OptimumReport {
  double arg = 0.0;
  double value = 0.0;
  bool unimodal = true;        // coarse grid rose then fell (plateaus allowed)
  bool bracketed = false;      // optimum strictly inside the search interval
  std::vector<GridSample> coarse;
};

/// Maximizes f over [lo, hi] (lo > 0) on a logarithmic scale: coarse log grid,
/// then golden-section refinement between the neighbours of the best grid point.
/// Non-finite values are treated as -inf. A non-unimodal coarse grid triggers a
/// dense-grid pass before refinement and clears `unimodal`.
OptimumReport maximize_log_scale(const std::function<double(double)>& f, double lo, double hi,
                                 const OptimizerOptions& opts = {});

/// Golden-section maximization of a unimodal function on [a, b].
double golden_section_maximize(const std::function<double(double)>& f, double a, double b,
                               double tol, int max_iterations = 200);

/// Bisection root of a function that changes sign on [a, b].
double bisect_root(const std::function<double(double)>& f, double a, double b, int iterations = 60);

}  // namespace qkd
