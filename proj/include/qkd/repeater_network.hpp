#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qkd/dv_rates.hpp"

namespace qkd {

struct RepeaterParams {
  double nu_S = 1e10;            // source rate, Hz
  double eta = 0.5;              // end detector efficiency
  double eta_M = 0.9;            // Bell-measurement detector efficiency
  double p_M = 0.9;              // memory in-out probability
  int N = 1000;                  // stored modes
  double T_M = 10.0;             // memory lifetime, s
  double F = 0.95;               // Bell-measurement fidelity
  double alpha_db_per_km = 0.2;
  double length_km = 0.0;        // Alice-Bob distance
  double c_fiber_km_per_s = 2e5;

  void validate() const;
  double transmittance() const;
};

/// Direct link: K1 = nu_S · t · eta^2.
double rate_direct(const RepeaterParams& rp);

/// Mean number of rounds until both halves of a two-link chain have succeeded
/// when each succeeds independently with probability x per round.
double expected_rounds(double x);

/// Per-round success probability of one half link, 1 - (1 - sqrt(t) eta)^N.
double half_link_success(const RepeaterParams& rp);

/// Link-establishment time <n>·l/c with the exact <n>.
double link_time(const RepeaterParams& rp);

/// Small-x shorthand (3/2)(l/c) / (N sqrt(t) eta).
double link_time_approx(const RepeaterParams& rp);

/// Channel error after swapping, (2/3)(1 - F).
double swap_error(double F);

/// Two-link repeater; R is the rate of established pairs (0 once the link
/// time reaches the memory lifetime), r = 1 - 2h(eps).
RateResult rate_two_link(const RepeaterParams& rp);

struct NetworkSpec {
  double L_km = 0.0;
  double K_target = 1.0;         // Hz
  double C1 = 1.0;               // cost of one link's devices
  std::vector<double> spacing_km;
};

struct NetworkCost {
  std::vector<double> cost;      // +inf where K(l) = 0
  std::vector<double> figure;    // l · K(l)
  std::optional<double> l_opt;
  std::optional<double> cost_min;
};

/// C_tot(l) = C1 (L/l)(K_target/K(l)); the optimum maximizes l·K(l).
NetworkCost network_cost(const NetworkSpec& ns, const std::function<double(double)>& K_of_l);

/// Optimal spacing for K ∝ t^k: 10 / (k alpha ln 10).
double analytic_l_opt(double k, double alpha_db_per_km);

}  // namespace qkd
