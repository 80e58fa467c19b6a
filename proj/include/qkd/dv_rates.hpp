#pragma once

#include <optional>

#include "qkd/channel_model.hpp"
#include "qkd/optimize.hpp"
#include "qkd/sources.hpp"

namespace qkd {

/// Error-correction leakage leak_EC(Q) = f_EC · h(Q).
struct EcModel {
  double f_ec = 1.0;

  double leak(double Q) const;
};

/// Outcome of a key-rate evaluation. `r` is the raw secret fraction (may be
/// negative); `K` is clamped to R·max(r, 0).
struct RateResult {
  double R = 0.0;
  double Q = 0.0;
  double I_E = 0.0;
  double r = 0.0;
  double K = 0.0;
  std::optional<double> param_opt;  // optimized mu, mu', or v
  bool feasible = false;            // r > 0 and the bound's preconditions hold
  bool valid = true;                // inside the regime where the bound applies
};

/// Assembles R, Q, I_E into a result with r = 1 - leak_EC(Q) - I_E.
RateResult make_rate(double R, double Q, double I_E, const EcModel& ec);

RateResult rate_bb84_single_photon(const ExpectedStats& stats, const EcModel& ec);

/// Weak coherent pulses without decoy states: Eve's PNS attack on all
/// multi-photon pulses, Y1 = 1 - (nu/R) p_A(n >= 2).
RateResult rate_bb84_wcp_nodecoy(const PhotonStatistics& ps, const LinkParams& lp, const EcModel& ec);

/// Weak coherent pulses with exactly estimated decoy parameters.
RateResult rate_bb84_decoy(const PhotonStatistics& ps, const LinkParams& lp, const EcModel& ec);

/// Entanglement-based BB84 with a fraction zeta of correlated multi-pair events.
RateResult rate_bb84_eb(const ExpectedStats& stats, double zeta, const EcModel& ec);

/// Naive upper bound for calibrated devices (dark counts and the t_B·eta
/// factor are not attributed to Eve).
RateResult rate_bb84_upperbound_calibrated(const PhotonStatistics& ps, const LinkParams& lp,
                                           const EcModel& ec, bool decoy);

/// SARG04 error rate induced by a channel perturbation eps~: eps = eps~ / (1/2 + eps~).
double sarg_error_map(double eps_tilde);
/// Inverse of sarg_error_map: eps~ = eps / (2 (1 - eps)).
double sarg_error_unmap(double eps);

/// r = max(I(A:B) - I_E, 0).
double csiszar_korner_rate(double I_AB, double I_E);

// Intensity optimization over mu in [mu_min, mu_max] on a log scale.
struct IntensityRange {
  double mu_min = 1e-6;
  double mu_max = 1.0;
};

RateResult optimize_bb84_wcp_nodecoy(const LinkParams& lp, const EcModel& ec, const IntensityRange& range = {},
                                     OptimumReport* report = nullptr);
RateResult optimize_bb84_decoy(const LinkParams& lp, const EcModel& ec, const IntensityRange& range = {},
                               OptimumReport* report = nullptr);
RateResult optimize_bb84_upper(const LinkParams& lp, const EcModel& ec, bool decoy,
                               const IntensityRange& range = {}, OptimumReport* report = nullptr);

/// EB BB84 with a cw heralded source at a fixed mu'·delta_t product,
/// normalized to the trigger rate (nu_eff of `lp`).
RateResult rate_bb84_eb_cw(const LinkParams& lp, const EcModel& ec, double pair_product, double zeta = 0.0);

/// EB BB84 with the absolute rate K = nu_cw(mu') · r(mu'), optimized over the
/// pair-generation rate mu' in [mu_prime_min, mu_prime_max] (Hz).
RateResult optimize_bb84_eb_cw(LinkParams lp, const EcModel& ec, const RepetitionLimits& lim, double delta_t,
                               double zeta, double mu_prime_min, double mu_prime_max,
                               OptimumReport* report = nullptr);

}  // namespace qkd
