#pragma once

#include <array>

#include <Eigen/Dense>

#include "qkd/dv_rates.hpp"

namespace qkd {

/// Coherent-state Gaussian-modulation protocol with homodyne detection and
/// reverse reconciliation. All variances in shot-noise units.
struct CvState {
  double v = 1.0;         // modulation variance + 1
  double t = 1.0;         // channel transmittance
  double eta = 1.0;       // homodyne detection efficiency
  double epsilon = 0.0;   // excess noise referred to the input
  double v_el = 0.0;      // electronic noise
  double beta = 1.0;      // reconciliation efficiency
  double nu_eff = 1.0;    // pulse rate, Hz

  double t_eta() const { return t * eta; }
  void validate() const;
};

/// 4x4 covariance matrix in (x_A, p_A, x_B, p_B) ordering.
using CvCovariance = Eigen::Matrix4d;

/// Detection noise delta_h = (1 + v_el)/eta - 1.
double detection_noise(const CvState& cs);

/// Total input-referred noise delta = (1-t)/t + delta_h/t + epsilon.
double total_noise(const CvState& cs);

/// Same quantity through the t·eta-only form (1 - t eta + v_el)/(t eta) + epsilon.
double total_noise_compact(const CvState& cs);

/// I(A:B) = 1/2 log2[(delta + v)/(delta + 1)].
double mutual_info_ab(const CvState& cs);

/// Conditional variances of Bob's quadrature: given Alice's heterodyne
/// (v_{B|A_M}), given her homodyne (v_{B|A}), and Eve's bound 1/v_{B|A}.
double cond_var_b_given_a_het(const CvState& cs);
double cond_var_b_given_a_hom(const CvState& cs);
double cond_var_b_given_e_bound(const CvState& cs);

/// Secret fraction against individual attacks (beta not applied), K = nu·max(r, 0).
RateResult rate_cv_individual(const CvState& cs);

CvCovariance cv_covariance(const CvState& cs);

/// Symplectic eigenvalues of a two-mode covariance, sorted descending:
/// moduli of the eigenvalues of Omega·gamma.
std::array<double, 2> symplectic_spectrum(const CvCovariance& gamma);

/// Symplectic eigenvalue of Alice's mode conditioned on Bob's x-homodyne.
double conditional_symplectic_a_given_b(const CvCovariance& gamma);

struct HolevoTerms {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double chi = 0.0;
};

/// Closed-form symplectic eigenvalues and chi(B:E) = g(l1) + g(l2) - g(l3)
/// with l_k = (lambda_k - 1)/2.
HolevoTerms holevo_terms(const CvState& cs);
double holevo_be_collective(const CvState& cs);

/// K = nu · max(beta I(A:B) - chi(B:E), 0).
RateResult rate_cv_collective(const CvState& cs);

/// Optimizes the collective-attack rate over v in [1, v_max] (log scale).
RateResult optimize_cv_collective(CvState cs, double v_max = 1e4, OptimumReport* report = nullptr);

}  // namespace qkd
