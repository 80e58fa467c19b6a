#include "qkd/repeater_network.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qkd/mathcore.hpp"

namespace qkd {

void RepeaterParams::validate() const {
  if (!(nu_S > 0.0)) throw std::domain_error("RepeaterParams: nu_S must be positive");
  require_probability(eta, "eta");
  require_probability(eta_M, "eta_M");
  require_probability(p_M, "p_M");
  if (N < 1) throw std::domain_error("RepeaterParams: N must be >= 1");
  if (!(T_M > 0.0)) throw std::domain_error("RepeaterParams: T_M must be positive");
  if (!(F >= 0.25 && F <= 1.0)) throw std::domain_error("RepeaterParams: F outside [1/4, 1]");
  if (!(alpha_db_per_km >= 0.0)) throw std::domain_error("RepeaterParams: alpha must be >= 0");
  if (!(length_km >= 0.0)) throw std::domain_error("RepeaterParams: length must be >= 0");
  if (!(c_fiber_km_per_s > 0.0)) throw std::domain_error("RepeaterParams: c_fiber must be positive");
}

double RepeaterParams::transmittance() const { return fiber_transmittance(alpha_db_per_km, length_km); }

double rate_direct(const RepeaterParams& rp) {
  rp.validate();
  return rp.nu_S * rp.transmittance() * rp.eta * rp.eta;
}

double expected_rounds(double x) {
  if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("expected_rounds: x must be in (0, 1]");
  return (3.0 - 2.0 * x) / (x * (2.0 - x));
}

double half_link_success(const RepeaterParams& rp) {
  rp.validate();
  const double p = std::sqrt(rp.transmittance()) * rp.eta;
  // 1 - (1-p)^N without cancellation for small p
  return -std::expm1(static_cast<double>(rp.N) * std::log1p(-p));
}

double link_time(const RepeaterParams& rp) {
  const double x = half_link_success(rp);
  if (x <= 0.0) return std::numeric_limits<double>::infinity();
  return expected_rounds(x) * rp.length_km / rp.c_fiber_km_per_s;
}

double link_time_approx(const RepeaterParams& rp) {
  rp.validate();
  const double p = std::sqrt(rp.transmittance()) * rp.eta;
  return 1.5 * (rp.length_km / rp.c_fiber_km_per_s) / (rp.N * p);
}

double swap_error(double F) {
  if (!(F >= 0.25 && F <= 1.0)) throw std::domain_error("swap_error: F outside [1/4, 1]");
  return 2.0 / 3.0 * (1.0 - F);
}

RateResult rate_two_link(const RepeaterParams& rp) {
  rp.validate();
  const double tau = link_time(rp);
  RateResult res;
  res.Q = swap_error(rp.F);
  if (tau < rp.T_M) {
    const double pair_rate = 0.5 * rp.p_M * rp.p_M * rp.eta_M * rp.eta_M;
    res.R = tau > 0.0 ? pair_rate / tau : std::numeric_limits<double>::infinity();
  }
  res.I_E = binary_entropy(res.Q);
  res.r = 1.0 - 2.0 * binary_entropy(res.Q);
  res.feasible = res.R > 0.0 && res.r > 0.0;
  res.K = res.feasible ? res.R * res.r : 0.0;
  return res;
}

NetworkCost network_cost(const NetworkSpec& ns, const std::function<double(double)>& K_of_l) {
  if (!(ns.L_km > 0.0)) throw std::domain_error("network_cost: L must be positive");
  if (!(ns.K_target > 0.0)) throw std::domain_error("network_cost: K_target must be positive");
  NetworkCost out;
  double best = 0.0;
  for (double l : ns.spacing_km) {
    if (!(l > 0.0)) throw std::domain_error("network_cost: spacing must be positive");
    const double k = K_of_l(l);
    const double fig = (k > 0.0 && std::isfinite(k)) ? l * k : 0.0;
    out.figure.push_back(fig);
    out.cost.push_back(fig > 0.0 ? ns.C1 * (ns.L_km / l) * (ns.K_target / k)
                                 : std::numeric_limits<double>::infinity());
    if (fig > best) {
      best = fig;
      out.l_opt = l;
      out.cost_min = out.cost.back();
    }
  }
  return out;
}

double analytic_l_opt(double k, double alpha_db_per_km) {
  if (!(k > 0.0 && alpha_db_per_km > 0.0)) throw std::domain_error("analytic_l_opt: k and alpha must be positive");
  return 10.0 / (k * alpha_db_per_km * std::log(10.0));
}

}  // namespace qkd
