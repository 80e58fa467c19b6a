#include "qkd/dv_rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qkd/mathcore.hpp"

namespace qkd {
namespace {

// Y·(1 - h(e)) with e clamped to [0, 1/2]; zero once the bound collapses
// (Y <= 0 or e >= 1/2), which keeps r continuous across the boundary.
double protected_fraction(double yield, double err) {
  if (yield <= 0.0) return 0.0;
  if (err >= 0.5) return 0.0;
  return yield * (1.0 - binary_entropy(std::max(0.0, err)));
}

bool single_photon_bound_holds(double yield, double err) { return yield > 0.0 && err <= 0.5; }

RateResult finalize(RateResult res, bool preconditions) {
  res.feasible = preconditions && res.r > 0.0;
  res.K = res.feasible ? res.R * res.r : 0.0;
  return res;
}

// Y1-type bound shared by WCP without decoy and the EB formula.
RateResult tagged_bound(const ExpectedStats& st, double y1, const EcModel& ec) {
  const double err = y1 > 0.0 ? st.Q / y1 : 1.0;
  RateResult res;
  res.R = st.R;
  res.Q = st.Q;
  res.I_E = 1.0 - protected_fraction(y1, err);
  res.r = 1.0 - ec.leak(st.Q) - res.I_E;
  return finalize(res, single_photon_bound_holds(y1, err));
}

RateResult with_param(RateResult res, double p) {
  res.param_opt = p;
  return res;
}

RateResult optimize_mu(const std::function<RateResult(double)>& eval, const IntensityRange& range,
                       OptimumReport* report) {
  // unclamped R·r keeps the objective informative in infeasible regions
  const auto objective = [&](double mu) {
    const RateResult res = eval(mu);
    return res.R * res.r;
  };
  const OptimumReport rep = maximize_log_scale(objective, range.mu_min, range.mu_max);
  if (report) *report = rep;
  return with_param(eval(rep.arg), rep.arg);
}

}  // namespace

double EcModel::leak(double Q) const {
  if (f_ec < 1.0) throw std::domain_error("EcModel: f_EC must be >= 1");
  return f_ec * binary_entropy(std::clamp(Q, 0.0, 1.0));
}

RateResult make_rate(double R, double Q, double I_E, const EcModel& ec) {
  RateResult res;
  res.R = R;
  res.Q = Q;
  res.I_E = I_E;
  res.r = 1.0 - ec.leak(Q) - I_E;
  return finalize(res, true);
}

RateResult rate_bb84_single_photon(const ExpectedStats& stats, const EcModel& ec) {
  return tagged_bound(stats, 1.0, ec);
}

RateResult rate_bb84_wcp_nodecoy(const PhotonStatistics& ps, const LinkParams& lp, const EcModel& ec) {
  const ExpectedStats st = expected_dv_stats(ps, lp);
  const double y1 = 1.0 - (st.nu_eff / st.R) * st.p_multi;
  return tagged_bound(st, y1, ec);
}

RateResult rate_bb84_decoy(const PhotonStatistics& ps, const LinkParams& lp, const EcModel& ec) {
  const ExpectedStats st = expected_dv_stats(ps, lp);
  RateResult res;
  res.R = st.R;
  res.Q = st.Q;
  res.I_E = 1.0 - st.Y0 - protected_fraction(st.Y1, st.eps1);
  res.r = 1.0 - ec.leak(st.Q) - res.I_E;
  return finalize(res, st.eps1 <= 0.5);
}

RateResult rate_bb84_eb(const ExpectedStats& stats, double zeta, const EcModel& ec) {
  require_probability(zeta, "zeta");
  const double y_multi = stats.p_multi * (stats.nu_eff / stats.R) * zeta;
  return tagged_bound(stats, 1.0 - y_multi, ec);
}

RateResult rate_bb84_upperbound_calibrated(const PhotonStatistics& ps, const LinkParams& lp,
                                           const EcModel& ec, bool decoy) {
  const ExpectedStats st = expected_dv_stats(ps, lp);
  const double ratio = st.nu_eff / st.R;
  const double Y = (1.0 - 2.0 * lp.p_d * ratio) / (1.0 - 2.0 * lp.p_d);
  const double delta = 0.5 * (1.0 - Y);

  double y1 = 0.0;
  double eps1 = 0.0;
  if (decoy) {
    // photon-only yields and error are measured exactly: Q = Y eps + delta
    y1 = st.Y1;
    eps1 = Y > 0.0 ? (st.Q - delta) / Y : 1.0;
  } else {
    y1 = Y - lp.t_B * lp.eta * ratio * st.p_multi;
    eps1 = y1 > 0.0 ? (st.Q - delta) / y1 : 1.0;
  }
  if (eps1 < 0.0 && eps1 > -1e-12) eps1 = 0.0;

  RateResult res;
  res.R = st.R;
  res.Q = st.Q;
  res.I_E = Y - protected_fraction(y1, eps1);
  res.r = 1.0 - ec.leak(st.Q) - res.I_E;
  return finalize(res, y1 > 0.0 && eps1 >= 0.0 && eps1 <= 0.5);
}

double sarg_error_map(double eps_tilde) {
  if (!(eps_tilde >= 0.0 && eps_tilde <= 0.5)) throw std::domain_error("sarg_error_map: eps~ outside [0,1/2]");
  return eps_tilde / (0.5 + eps_tilde);
}

double sarg_error_unmap(double eps) {
  if (!(eps >= 0.0 && eps <= 0.5)) throw std::domain_error("sarg_error_unmap: eps outside [0,1/2]");
  return eps / (2.0 * (1.0 - eps));
}

double csiszar_korner_rate(double I_AB, double I_E) { return std::max(I_AB - I_E, 0.0); }

RateResult optimize_bb84_wcp_nodecoy(const LinkParams& lp, const EcModel& ec, const IntensityRange& range,
                                     OptimumReport* report) {
  return optimize_mu([&](double mu) { return rate_bb84_wcp_nodecoy(PhotonStatistics::poissonian(mu), lp, ec); },
                     range, report);
}

RateResult optimize_bb84_decoy(const LinkParams& lp, const EcModel& ec, const IntensityRange& range,
                               OptimumReport* report) {
  return optimize_mu([&](double mu) { return rate_bb84_decoy(PhotonStatistics::poissonian(mu), lp, ec); }, range,
                     report);
}

RateResult optimize_bb84_upper(const LinkParams& lp, const EcModel& ec, bool decoy, const IntensityRange& range,
                               OptimumReport* report) {
  return optimize_mu(
      [&](double mu) { return rate_bb84_upperbound_calibrated(PhotonStatistics::poissonian(mu), lp, ec, decoy); },
      range, report);
}

RateResult rate_bb84_eb_cw(const LinkParams& lp, const EcModel& ec, double pair_product, double zeta) {
  // only the product mu'·delta_t enters the normalized statistics
  const ExpectedStats st = expected_eb_stats(PhotonStatistics::heralded_pair_cw(pair_product, 1.0), lp);
  return rate_bb84_eb(st, zeta, ec);
}

RateResult optimize_bb84_eb_cw(LinkParams lp, const EcModel& ec, const RepetitionLimits& lim, double delta_t,
                               double zeta, double mu_prime_min, double mu_prime_max, OptimumReport* report) {
  if (!(delta_t > 0.0)) throw std::domain_error("optimize_bb84_eb_cw: coincidence window must be positive");
  const auto eval = [&](double mu_prime) {
    LinkParams at = lp;
    at.nu_eff = cw_repetition_rate(lim, mu_prime, lp.t, lp.t_B, lp.eta, delta_t);
    if (!(at.nu_eff > 0.0) || mu_prime * delta_t >= 1.0) {
      RateResult none;
      none.r = -1.0;
      return none;
    }
    return rate_bb84_eb(expected_eb_stats(PhotonStatistics::heralded_pair_cw(mu_prime, delta_t), at), zeta, ec);
  };
  const double hi = std::min(mu_prime_max, 0.999 / delta_t);
  return optimize_mu(eval, {mu_prime_min, hi}, report);
}

}  // namespace qkd
