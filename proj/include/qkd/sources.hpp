#pragma once

#include <limits>

namespace qkd {

enum class SourceKind { single_photon, poissonian, heralded_pair_cw, heralded_pair_pulsed };

/// Photon-number statistics p_A(n) of Alice's source.
///
/// For poissonian and heralded_pair_pulsed, `mu` is the mean photon (pair)
/// number per pulse. For heralded_pair_cw, `mu` is the pair-generation rate
/// mu' in Hz and `delta_t` the coincidence window in seconds; the relevant
/// dimensionless quantity is mu'·delta_t, which must be below one.
class PhotonStatistics {
 public:
  static PhotonStatistics single_photon();
  static PhotonStatistics poissonian(double mu);
  static PhotonStatistics heralded_pair_cw(double mu_prime, double delta_t);
  /// Short-pulse SPDC in the mu << 1 regime; rejects mu > 0.2.
  static PhotonStatistics heralded_pair_pulsed(double mu);

  SourceKind kind() const { return kind_; }
  double mu() const { return mu_; }
  double delta_t() const { return delta_t_; }

  double p_n(int n) const;
  double p_vac() const;
  double p_single() const;
  double p_multi() const;

  /// Largest n with p_n(n) > 0, or a large sentinel for unbounded support.
  int support_limit() const;

 private:
  PhotonStatistics(SourceKind kind, double mu, double delta_t) : kind_(kind), mu_(mu), delta_t_(delta_t) {}

  SourceKind kind_;
  double mu_;
  double delta_t_;
};

/// Device limits on the repetition rate. A zero dead time or duty-cycle period
/// means "no constraint".
struct RepetitionLimits {
  double nu_max = std::numeric_limits<double>::infinity();  // Hz
  double tau_d = 0.0;    // Bob's detector dead time, s
  double tau_d_A = 0.0;  // Alice's detector dead time, s
  double T_dc = 0.0;     // duty-cycle period, s
  double eta_A = 1.0;
  double t_A = 1.0;
};

/// min(nu_max, 1/(tau_d mu t t_B eta), 1/T_dc) for pulsed sources.
double pulsed_repetition_rate(const RepetitionLimits& lim, double mu, double t, double t_B, double eta);

/// min(eta_A t_A mu', 1/tau_d^A, 1/(tau_d t t_B eta), 1/delta_t) for cw heralded sources.
double cw_repetition_rate(const RepetitionLimits& lim, double mu_prime, double t, double t_B, double eta,
                          double delta_t);

}  // namespace qkd
