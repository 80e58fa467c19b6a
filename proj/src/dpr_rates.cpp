#include "qkd/dpr_rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qkd/mathcore.hpp"

namespace qkd {
namespace {

RateResult errorless(double R, double I_E) {
  RateResult res;
  res.R = R;
  res.I_E = I_E;
  res.r = 1.0 - I_E;
  res.feasible = res.r > 0.0;
  res.K = res.feasible ? R * res.r : 0.0;
  return res;
}

RateResult optimize_over_mu(const std::function<RateResult(double)>& eval, double lo, double hi,
                            OptimumReport* report) {
  const OptimumReport rep = maximize_log_scale(
      [&](double mu) {
        const RateResult r = eval(mu);
        return r.R * r.r;
      },
      lo, hi);
  if (report) *report = rep;
  RateResult best = eval(rep.arg);
  best.param_opt = rep.arg;
  return best;
}

}  // namespace

void DprParams::validate() const {
  if (!(mu >= 0.0)) throw std::domain_error("DprParams: mu must be non-negative");
  require_probability(t, "DPR t");
  require_probability(t_B, "DPR t_B");
  require_probability(eta, "DPR eta");
  require_probability(V, "DPR V");
  require_probability(eps, "DPR eps");
  require_probability(p_d, "DPR p_d");
  if (!(f >= 0.0 && f < 1.0)) throw std::domain_error("DprParams: f must lie in [0,1)");
  if (!(nu_S > 0.0)) throw std::domain_error("DprParams: nu_S must be positive");
}

DprParams DprParams::from_link(double mu, const LinkParams& lp, double eps, double f, double nu_S) {
  DprParams p;
  p.mu = mu;
  p.t = lp.t;
  p.t_B = lp.t_B;
  p.eta = lp.eta;
  p.V = lp.V;
  p.eps = eps;
  p.f = f;
  p.nu_S = nu_S;
  p.p_d = lp.p_d;
  return p;
}

double bs_overlap_gamma(double mu, double tau) { return std::exp(-mu * (1.0 - tau)); }

double eve_info_dps_bs(double gamma) {
  const double g2 = gamma * gamma;
  return 2.0 * binary_entropy(0.5 * (1.0 - g2)) - binary_entropy(0.5 * (1.0 - g2 * g2));
}

double eve_info_cow_bs(double gamma) { return binary_entropy(0.5 * (1.0 - gamma)); }

double eve_info_cow_twopulse(double mu, double V, double eps) {
  const double xi = 2.0 * std::sqrt(V * (1.0 - V));
  const double e = std::exp(-mu);
  if (e <= xi) return 1.0;
  const double F = (2.0 * V - 1.0) * e - xi * std::sqrt(1.0 - e * e);
  return eps + (1.0 - eps) * binary_entropy(std::clamp(0.5 * (1.0 + F), 0.0, 1.0));
}

RateResult rate_dps_bs(const DprParams& p) {
  p.validate();
  const double R = p.nu_S * (1.0 - std::exp(-p.mu * p.tau()));
  return errorless(R, eve_info_dps_bs(bs_overlap_gamma(p.mu, p.tau())));
}

RateResult rate_cow_bs(const DprParams& p) {
  p.validate();
  const double R = p.nu_S * 0.5 * (1.0 - p.f) * (1.0 - std::exp(-p.mu * p.tau()));
  return errorless(R, eve_info_cow_bs(bs_overlap_gamma(p.mu, p.tau())));
}

RateResult rate_cow_twopulse(const DprParams& p, const EcModel& ec) {
  p.validate();
  const double nu_eff = p.nu_S * 0.5 * (1.0 - p.f);
  const double signal = p.mu * p.tau();
  const double Q = p.qber_model == CowQber::bit_error || signal + 2.0 * p.p_d <= 0.0
                       ? p.eps
                       : (p.eps * signal + p.p_d) / (signal + 2.0 * p.p_d);
  RateResult res = make_rate(nu_eff * (signal + 2.0 * p.p_d), Q, eve_info_cow_twopulse(p.mu, p.V, p.eps), ec);
  res.valid = p.mu * p.t <= kCowValidityLimit * (1.0 + 1e-12);
  return res;
}

RateResult optimize_cow_twopulse(DprParams p, const EcModel& ec, CowValidity mode, double mu_min, double mu_max,
                                 OptimumReport* report) {
  double hi = mu_max;
  if (mode == CowValidity::constrain && p.t > 0.0) hi = std::min(hi, kCowValidityLimit / p.t);
  const auto eval = [&](double mu) {
    DprParams at = p;
    at.mu = mu;
    return rate_cow_twopulse(at, ec);
  };
  if (hi <= mu_min) {
    RateResult res = eval(mu_min);
    res.param_opt = mu_min;
    return res;
  }
  return optimize_over_mu(eval, mu_min, hi, report);
}

RateResult optimize_dps_bs(DprParams p, double mu_min, double mu_max) {
  return optimize_over_mu(
      [&](double mu) {
        DprParams at = p;
        at.mu = mu;
        return rate_dps_bs(at);
      },
      mu_min, mu_max, nullptr);
}

RateResult optimize_cow_bs(DprParams p, double mu_min, double mu_max) {
  return optimize_over_mu(
      [&](double mu) {
        DprParams at = p;
        at.mu = mu;
        return rate_cow_bs(at);
      },
      mu_min, mu_max, nullptr);
}

}  // namespace qkd
