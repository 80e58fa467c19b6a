#include "qkd/mathcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qkd {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0,1], got " + std::to_string(p));
  }
}

double xlog2x(double x) {
  if (x <= 0.0) return 0.0;
  return x * std::log2(x);
}

double binary_entropy(double p) {
  require_probability(p, "binary_entropy argument");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -xlog2x(p) - xlog2x(1.0 - p);
}

double shannon_entropy(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::domain_error("shannon_entropy: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::domain_error("shannon_entropy: weights sum to " + std::to_string(total));
  }
  double h = 0.0;
  for (double w : weights) h -= xlog2x(w);
  return h;
}

double thermal_entropy_g(double x) {
  if (!(x >= 0.0)) throw std::domain_error("thermal_entropy_g: negative mean photon number");
  if (x == 0.0) return 0.0;
  // log2(x+1) + x log2(1 + 1/x), stable for large x
  return std::log1p(x) / std::log(2.0) + x * std::log1p(1.0 / x) / std::log(2.0);
}

double poisson_p(int n, double mu) {
  if (n < 0) throw std::domain_error("poisson_p: negative photon number");
  if (!(mu >= 0.0)) throw std::domain_error("poisson_p: negative mean");
  if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(-mu + n * std::log(mu) - std::lgamma(n + 1.0));
}

double poisson_tail(int n_min, double mu) {
  if (!(mu >= 0.0)) throw std::domain_error("poisson_tail: negative mean");
  if (n_min <= 0) return 1.0;
  // For small mu the complement 1 - sum loses all digits; sum the tail
  // directly until the terms drop below 1e-18 of the accumulator.
  if (mu < 1.0) {
    double term = poisson_p(n_min, mu);
    double acc = 0.0;
    for (int n = n_min; term > 0.0; ++n) {
      acc += term;
      if (term < 1e-18 * acc) break;
      term *= mu / (n + 1);
    }
    return acc;
  }
  double term = std::exp(-mu);
  double head = 0.0;
  for (int n = 0; n < n_min; ++n) {
    head += term;
    term *= mu / (n + 1);
  }
  return std::max(0.0, 1.0 - head);
}

double g2_zero(double p1, double p2) {
  require_probability(p1, "g2_zero p1");
  require_probability(p2, "g2_zero p2");
  if (p1 == 0.0) throw std::domain_error("g2_zero: p(1) must be positive");
  return 2.0 * p2 / (p1 * p1);
}

double fiber_transmittance(double alpha_db_per_km, double length_km) {
  if (!(alpha_db_per_km >= 0.0)) throw std::domain_error("fiber_transmittance: negative attenuation");
  if (!(length_km >= 0.0)) throw std::domain_error("fiber_transmittance: negative length");
  return std::pow(10.0, -alpha_db_per_km * length_km / 10.0);
}

double freespace_transmittance(double d_s, double d_r, double divergence,
                               double alpha_db_per_km, double length_km) {
  if (d_s < 0.0 || d_r < 0.0 || divergence < 0.0 || alpha_db_per_km < 0.0 || length_km < 0.0) {
    throw std::domain_error("freespace_transmittance: arguments must be non-negative");
  }
  const double spot = d_s + divergence * length_km;
  if (spot <= 0.0) throw std::domain_error("freespace_transmittance: zero beam diameter");
  const double ratio = d_r / spot;
  const double geometric = std::min(1.0, ratio * ratio);
  return geometric * std::pow(10.0, -alpha_db_per_km * length_km / 10.0);
}

}  // namespace qkd
