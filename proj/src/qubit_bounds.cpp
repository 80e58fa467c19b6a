#include "qkd/qubit_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qkd/mathcore.hpp"
#include "qkd/optimize.hpp"

namespace qkd {
namespace {

constexpr double kTol = 1e-12;

double clamp_unit(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

}  // namespace

void BellDiagonalState::validate() const {
  double total = 0.0;
  for (double l : lambda) {
    if (l < -kTol) throw std::domain_error("BellDiagonalState: negative eigenvalue");
    total += l;
  }
  if (std::abs(total - 1.0) > kTol) throw std::domain_error("BellDiagonalState: eigenvalues must sum to 1");
}

ErrorRates error_rates(const BellDiagonalState& s) {
  s.validate();
  const auto& l = s.lambda;
  return {l[1] + l[3], l[1] + l[2], l[2] + l[3]};
}

BellDiagonalState bell_state_from_errors(const ErrorRates& e) {
  BellDiagonalState s;
  s.lambda = {1.0 - 0.5 * (e.eps_x + e.eps_y + e.eps_z), 0.5 * (e.eps_x + e.eps_y - e.eps_z),
              0.5 * (e.eps_y + e.eps_z - e.eps_x), 0.5 * (e.eps_x + e.eps_z - e.eps_y)};
  for (double l : s.lambda) {
    if (l < -kTol) throw std::domain_error("error triple is not compatible with a Bell-diagonal state");
  }
  for (double& l : s.lambda) l = std::max(0.0, l);
  return s;
}

BellDiagonalState bb84_parametrized_state(double eps_z, double u, double v) {
  require_probability(eps_z, "eps_z");
  require_probability(u, "u");
  require_probability(v, "v");
  BellDiagonalState s;
  s.lambda = {(1.0 - eps_z) * (1.0 - u), (1.0 - eps_z) * u, eps_z * (1.0 - v), eps_z * v};
  return s;
}

double eve_info_bell(const BellDiagonalState& s) {
  s.validate();
  return shannon_entropy(s.lambda) - binary_entropy(clamp_unit(error_rates(s).eps_z));
}

double eve_info_sixstate(double eps_x, double eps_y, double eps_z) {
  require_probability(eps_x, "eps_x");
  require_probability(eps_y, "eps_y");
  require_probability(eps_z, "eps_z");
  const BellDiagonalState s = bell_state_from_errors({eps_x, eps_y, eps_z});
  double info = 0.0;
  if (eps_z > 0.0) info += eps_z * binary_entropy(clamp_unit(s.lambda[3] / eps_z));
  if (eps_z < 1.0) info += (1.0 - eps_z) * binary_entropy(clamp_unit(s.lambda[0] / (1.0 - eps_z)));
  return info;
}

double eve_info_bb84(double eps_x) {
  if (!(eps_x >= 0.0 && eps_x <= 0.5)) throw std::domain_error("eve_info_bb84: eps_x outside [0,1/2]");
  return binary_entropy(eps_x);
}

double phase_covariant_eps_y(double Q) {
  if (!(Q >= 0.0 && Q <= 0.5)) throw std::domain_error("phase_covariant_eps_y: Q outside [0,1/2]");
  return 2.0 * Q * (1.0 - Q);
}

double secret_fraction_bb84(double Q) { return 1.0 - binary_entropy(Q) - eve_info_bb84(Q); }

double secret_fraction_sixstate(double Q) { return 1.0 - binary_entropy(Q) - eve_info_sixstate(Q, Q, Q); }

double critical_qber_bb84() { return bisect_root(secret_fraction_bb84, 0.05, 0.2); }

double critical_qber_sixstate() { return bisect_root(secret_fraction_sixstate, 0.05, 0.2); }

double critical_qber_intercept_resend() {
  return bisect_root([](double Q) { return 1.0 - binary_entropy(Q) - 2.0 * Q; }, 0.05, 0.3);
}

}  // namespace qkd
