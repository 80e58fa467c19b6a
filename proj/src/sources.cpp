#include "qkd/sources.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qkd/mathcore.hpp"

namespace qkd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPulsedPairMaxMu = 0.2;

double inverse_or_inf(double x) { return x > 0.0 ? 1.0 / x : kInf; }

}  // namespace

PhotonStatistics PhotonStatistics::single_photon() { return {SourceKind::single_photon, 1.0, 0.0}; }

PhotonStatistics PhotonStatistics::poissonian(double mu) {
  if (!(mu >= 0.0)) throw std::domain_error("poissonian source: mu must be non-negative");
  return {SourceKind::poissonian, mu, 0.0};
}

PhotonStatistics PhotonStatistics::heralded_pair_cw(double mu_prime, double delta_t) {
  if (!(mu_prime >= 0.0) || !(delta_t >= 0.0)) {
    throw std::domain_error("heralded_pair_cw: rate and window must be non-negative");
  }
  if (!(mu_prime * delta_t < 1.0)) throw std::domain_error("heralded_pair_cw: requires mu' * delta_t < 1");
  return {SourceKind::heralded_pair_cw, mu_prime, delta_t};
}

PhotonStatistics PhotonStatistics::heralded_pair_pulsed(double mu) {
  if (!(mu >= 0.0)) throw std::domain_error("heralded_pair_pulsed: mu must be non-negative");
  if (mu > kPulsedPairMaxMu) throw std::domain_error("heralded_pair_pulsed: approximation requires mu <= 0.2");
  return {SourceKind::heralded_pair_pulsed, mu, 0.0};
}

double PhotonStatistics::p_n(int n) const {
  if (n < 0) return 0.0;
  switch (kind_) {
    case SourceKind::single_photon:
      return n == 1 ? 1.0 : 0.0;
    case SourceKind::poissonian:
      return poisson_p(n, mu_);
    case SourceKind::heralded_pair_cw: {
      const double x = mu_ * delta_t_;
      if (n == 1) return 1.0 - x;
      if (n == 2) return x;
      return 0.0;
    }
    case SourceKind::heralded_pair_pulsed: {
      // vacuum takes the remainder of p(1) = mu, p(2) = 3/4 mu^2
      const double p2 = 0.75 * mu_ * mu_;
      if (n == 0) return 1.0 - mu_ - p2;
      if (n == 1) return mu_;
      if (n == 2) return p2;
      return 0.0;
    }
  }
  return 0.0;
}

double PhotonStatistics::p_vac() const { return p_n(0); }

double PhotonStatistics::p_single() const { return p_n(1); }

double PhotonStatistics::p_multi() const {
  if (kind_ == SourceKind::poissonian) return poisson_tail(2, mu_);
  return p_n(2);
}

int PhotonStatistics::support_limit() const {
  switch (kind_) {
    case SourceKind::single_photon:
      return 1;
    case SourceKind::heralded_pair_cw:
    case SourceKind::heralded_pair_pulsed:
      return 2;
    case SourceKind::poissonian:
      break;
  }
  return 100000;
}

double pulsed_repetition_rate(const RepetitionLimits& lim, double mu, double t, double t_B, double eta) {
  const double click = lim.tau_d * mu * t * t_B * eta;
  if (click < 0.0) throw std::domain_error("pulsed_repetition_rate: negative detection product");
  return std::min({lim.nu_max, inverse_or_inf(click), inverse_or_inf(lim.T_dc)});
}

double cw_repetition_rate(const RepetitionLimits& lim, double mu_prime, double t, double t_B, double eta,
                          double delta_t) {
  return std::min({lim.eta_A * lim.t_A * mu_prime, inverse_or_inf(lim.tau_d_A),
                   inverse_or_inf(lim.tau_d * t * t_B * eta), inverse_or_inf(delta_t)});
}

}  // namespace qkd
