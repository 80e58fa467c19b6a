#pragma once

#include "qkd/channel_model.hpp"
#include "qkd/dv_rates.hpp"

namespace qkd {

/// QBER entering error correction for COW: the bit error alone, or the bit
/// error diluted by dark counts as for prepare-and-measure BB84.
enum class CowQber { bit_error, with_dark_counts };

/// Parameters of distributed-phase-reference protocols (DPS, COW), in the
/// uncalibrated-device convention where Bob receives a fraction t·t_B·eta.
struct DprParams {
  double mu = 0.0;    // mean photon number per pulse
  double t = 1.0;     // channel transmittance
  double t_B = 1.0;
  double eta = 1.0;
  double V = 1.0;     // interferometer visibility
  double eps = 0.0;   // COW bit error (not tied to V)
  double f = 0.0;     // fraction of COW decoy sequences
  double nu_S = 1.0;  // pulse rate, Hz
  double p_d = 0.0;
  CowQber qber_model = CowQber::bit_error;

  double tau() const { return t * t_B * eta; }
  void validate() const;

  static DprParams from_link(double mu, const LinkParams& lp, double eps, double f, double nu_S);
};

/// Overlap gamma = exp(-mu (1 - tau)) of Eve's beam-splitter states.
double bs_overlap_gamma(double mu, double tau);

/// Eve's beam-splitting information: DPS 2h[(1-g^2)/2] - h[(1-g^4)/2], COW h[(1-g)/2].
double eve_info_dps_bs(double gamma);
double eve_info_cow_bs(double gamma);

/// Eve's information for the coherent two-pulse attack on COW (1 when
/// e^{-mu} <= 2 sqrt(V(1-V))).
double eve_info_cow_twopulse(double mu, double V, double eps);

RateResult rate_dps_bs(const DprParams& p);
RateResult rate_cow_bs(const DprParams& p);

/// COW under the two-pulse attack family; R = nu (1-f)/2 [mu tau + 2 p_d] and
/// Q = eps, or (eps mu tau + p_d)/(mu tau + 2 p_d) with CowQber::with_dark_counts. `valid` is cleared when mu·t > 0.1.
RateResult rate_cow_twopulse(const DprParams& p, const EcModel& ec);

constexpr double kCowValidityLimit = 0.1;

enum class CowValidity {
  constrain,  // optimize mu within mu·t <= 0.1
  discard,    // optimize freely, mark result invalid when mu_opt·t > 0.1
};

RateResult optimize_cow_twopulse(DprParams p, const EcModel& ec, CowValidity mode = CowValidity::constrain,
                                 double mu_min = 1e-6, double mu_max = 1.0, OptimumReport* report = nullptr);
RateResult optimize_dps_bs(DprParams p, double mu_min = 1e-6, double mu_max = 10.0);
RateResult optimize_cow_bs(DprParams p, double mu_min = 1e-6, double mu_max = 10.0);

}  // namespace qkd
