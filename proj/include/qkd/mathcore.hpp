#pragma once

#include <span>

namespace qkd {

// Entropies are in bits throughout.

/// x·log2(x) with the 0·log0 = 0 convention.
double xlog2x(double x);

/// h(p) = -p log2 p - (1-p) log2(1-p). Throws std::domain_error outside [0,1].
double binary_entropy(double p);

/// Shannon entropy of a normalized distribution (sum within 1e-12 of one).
double shannon_entropy(std::span<const double> weights);

/// Entropy of a thermal state with mean photon number x:
/// g(x) = (x+1) log2(x+1) - x log2 x.
double thermal_entropy_g(double x);

/// Poisson probability e^{-mu} mu^n / n!.
double poisson_p(int n, double mu);

/// P(N >= n_min) for N ~ Poisson(mu), by complement of the partial sum.
double poisson_tail(int n_min, double mu);

/// g2(0) ≈ 2 p(2) / p(1)^2.
double g2_zero(double p1, double p2);

/// Fiber transmittance 10^{-alpha l / 10}.
double fiber_transmittance(double alpha_db_per_km, double length_km);

/// Line-of-sight free-space transmittance (d_r / (d_s + D l))^2 · 10^{-alpha l / 10}.
/// The geometric factor is clamped to 1.
double freespace_transmittance(double d_s, double d_r, double divergence,
                               double alpha_db_per_km, double length_km);

/// Throws std::domain_error unless 0 <= p <= 1.
void require_probability(double p, const char* what);

}  // namespace qkd
