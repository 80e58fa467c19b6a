#include "qkd/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qkd {
namespace {

double finite_or_neg_inf(double v) {
  return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
}

std::vector<GridSample> log_grid(const std::function<double(double)>& f, double lo, double hi, int n) {
  std::vector<GridSample> grid;
  grid.reserve(n);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) {
    const double x = std::exp(a + (b - a) * i / (n - 1));
    grid.push_back({x, finite_or_neg_inf(f(x))});
  }
  return grid;
}

bool is_unimodal(const std::vector<GridSample>& g) {
  // -inf samples only allowed as a prefix or suffix
  std::size_t i = 0;
  while (i < g.size() && std::isinf(g[i].value)) ++i;
  std::size_t end = g.size();
  while (end > i && std::isinf(g[end - 1].value)) --end;
  bool descending = false;
  for (std::size_t k = i + 1; k < end; ++k) {
    if (std::isinf(g[k].value)) return false;
    if (g[k].value < g[k - 1].value) descending = true;
    else if (g[k].value > g[k - 1].value && descending) return false;
  }
  return true;
}

std::size_t argmax(const std::vector<GridSample>& g) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < g.size(); ++k)
    if (g[k].value > g[best].value) best = k;
  return best;
}

}  // namespace

double golden_section_maximize(const std::function<double(double)>& f, double a, double b,
                               double tol, int max_iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = finite_or_neg_inf(f(c));
  double fd = finite_or_neg_inf(f(d));
  for (int it = 0; it < max_iterations && std::abs(b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = finite_or_neg_inf(f(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = finite_or_neg_inf(f(d));
    }
  }
  return fc >= fd ? c : d;
}

OptimumReport maximize_log_scale(const std::function<double(double)>& f, double lo, double hi,
                                 const OptimizerOptions& opts) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("maximize_log_scale: need 0 < lo < hi");
  if (opts.coarse_points < 3) throw std::invalid_argument("maximize_log_scale: need >= 3 grid points");

  OptimumReport report;
  report.coarse = log_grid(f, lo, hi, opts.coarse_points);
  report.unimodal = is_unimodal(report.coarse);

  std::vector<GridSample> search = report.coarse;
  if (!report.unimodal) search = log_grid(f, lo, hi, opts.coarse_points * opts.dense_factor);

  const std::size_t k = argmax(search);
  if (std::isinf(search[k].value)) {
    report.arg = search[k].x;
    report.value = search[k].value;
    return report;
  }
  report.bracketed = k > 0 && k + 1 < search.size();
  const double a = std::log(search[k == 0 ? 0 : k - 1].x);
  const double b = std::log(search[std::min(k + 1, search.size() - 1)].x);
  const auto g = [&](double u) { return f(std::exp(u)); };
  const double u = golden_section_maximize(g, a, b, opts.rel_tol, opts.max_iterations);
  const double refined = finite_or_neg_inf(f(std::exp(u)));
  if (refined >= search[k].value) {
    report.arg = std::exp(u);
    report.value = refined;
  } else {
    report.arg = search[k].x;
    report.value = search[k].value;
  }
  return report;
}

double bisect_root(const std::function<double(double)>& f, double a, double b, int iterations) {
  double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) throw std::domain_error("bisect_root: no sign change on bracket");
  for (int i = 0; i < iterations; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace qkd
