#pragma once

#include <array>

namespace qkd {

/// Alice–Bob two-qubit state diagonal in the Bell basis
/// (Phi+, Phi-, Psi+, Psi-).
struct BellDiagonalState {
  std::array<double, 4> lambda{1.0, 0.0, 0.0, 0.0};

  void validate() const;
};

struct ErrorRates {
  double eps_x = 0.0;
  double eps_y = 0.0;
  double eps_z = 0.0;
};

ErrorRates error_rates(const BellDiagonalState& s);

/// Inverts error_rates; throws if the triple does not come from a state.
BellDiagonalState bell_state_from_errors(const ErrorRates& e);

/// BB84 parametrization lambda = ((1-ez)(1-u), (1-ez)u, ez(1-v), ez v).
BellDiagonalState bb84_parametrized_state(double eps_z, double u, double v);

/// Holevo quantity for a Z-basis key: H(lambda) - h(eps_z).
double eve_info_bell(const BellDiagonalState& s);

/// Six-state protocol, all three error rates measured.
double eve_info_sixstate(double eps_x, double eps_y, double eps_z);

/// BB84: only eps_x is measured; Eve's optimum is u = v = eps_x, giving h(eps_x).
double eve_info_bb84(double eps_x);

/// eps_y implied by the BB84 optimum when eps_x = eps_z = Q: 2Q(1-Q).
double phase_covariant_eps_y(double Q);

/// One-way secret fractions with perfect error correction.
double secret_fraction_bb84(double Q);
double secret_fraction_sixstate(double Q);

/// Roots of the secret fractions, by bisection on [0.05, 0.2].
double critical_qber_bb84();
double critical_qber_sixstate();

/// Intercept-resend on a fraction p of the photons: Q = p/4, I_E = 2Q.
/// Root of 1 - h(Q) - 2Q.
double critical_qber_intercept_resend();

}  // namespace qkd
