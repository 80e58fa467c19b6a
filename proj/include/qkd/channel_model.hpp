#pragma once

#include "qkd/sources.hpp"

namespace qkd {

/// Link and detector parameters of the a-priori comparison channel.
struct LinkParams {
  double t = 1.0;       // channel transmittance
  double t_B = 1.0;     // transmittance inside Bob's device
  double eta = 1.0;     // detector efficiency
  double p_d = 0.0;     // dark-count probability per gate
  double V = 1.0;       // visibility
  double nu_eff = 1.0;  // effective (sifted) pulse rate, Hz

  double forwarded() const { return t * t_B * eta; }
  void validate() const;
};

/// Expected detection and error statistics in the absence of Eve.
struct ExpectedStats {
  double R = 0.0;       // detection rate, Hz
  double Q = 0.0;       // QBER
  double Y0 = 0.0;      // fraction of detections from empty pulses (dark counts)
  double Y1 = 0.0;      // fraction of detections from single-photon pulses
  double eps1 = 0.0;    // single-photon error rate (decoy convention: equals Q)
  double P_sig = 0.0;   // signal detection probability per pulse
  double P_dark = 0.0;  // dark-count detection probability per pulse
  double p_multi = 0.0; // p_A(n >= 2) of the source
  double nu_eff = 0.0;  // effective pulse rate used for R
};

/// Depolarizing channel with dark counts for prepare-and-measure sources:
/// R = nu (P + P_d), Q = [eps P + P_d/2] / (P + P_d) with eps = (1-V)/2.
ExpectedStats expected_dv_stats(const PhotonStatistics& ps, const LinkParams& lp);

/// Entanglement-based variant for cw heralded pairs: adds the double-pair
/// error eps' = mu' delta_t / 2 to the channel error.
ExpectedStats expected_eb_stats(const PhotonStatistics& ps, const LinkParams& lp);

/// Double-pair error rate eps' = mu' delta_t / 2.
double double_pair_error(double mu_prime, double delta_t);

}  // namespace qkd
