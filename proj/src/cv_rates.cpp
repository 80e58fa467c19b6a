#include "qkd/cv_rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qkd/mathcore.hpp"

namespace qkd {
namespace {

constexpr double kDiscriminantGuard = 1e-9;

// g((lambda - 1)/2), tolerating lambda a hair below one from rounding
double g_of_symplectic(double lambda) {
  const double x = 0.5 * (lambda - 1.0);
  return thermal_entropy_g(std::max(0.0, x));
}

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  return omega;
}

}  // namespace

void CvState::validate() const {
  if (!(v >= 1.0)) throw std::domain_error("CvState: v must be >= 1");
  if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("CvState: t must lie in (0,1]");
  if (!(eta > 0.0 && eta <= 1.0)) throw std::domain_error("CvState: eta must lie in (0,1]");
  if (!(epsilon >= 0.0)) throw std::domain_error("CvState: excess noise must be non-negative");
  if (!(v_el >= 0.0)) throw std::domain_error("CvState: electronic noise must be non-negative");
  if (!(beta > 0.0 && beta <= 1.0)) throw std::domain_error("CvState: beta must lie in (0,1]");
}

double detection_noise(const CvState& cs) { return (1.0 + cs.v_el) / cs.eta - 1.0; }

double total_noise(const CvState& cs) {
  if (!(cs.t * cs.eta > 0.0)) throw std::domain_error("total_noise: t·eta must be positive");
  return (1.0 - cs.t) / cs.t + detection_noise(cs) / cs.t + cs.epsilon;
}

double total_noise_compact(const CvState& cs) {
  const double te = cs.t_eta();
  if (!(te > 0.0)) throw std::domain_error("total_noise: t·eta must be positive");
  return (1.0 - te + cs.v_el) / te + cs.epsilon;
}

double mutual_info_ab(const CvState& cs) {
  const double delta = total_noise(cs);
  return 0.5 * std::log2((delta + cs.v) / (delta + 1.0));
}

double cond_var_b_given_a_het(const CvState& cs) { return cs.t_eta() * (total_noise(cs) + 1.0); }

double cond_var_b_given_a_hom(const CvState& cs) { return cs.t_eta() * (total_noise(cs) + 1.0 / cs.v); }

double cond_var_b_given_e_bound(const CvState& cs) { return 1.0 / cond_var_b_given_a_hom(cs); }

RateResult rate_cv_individual(const CvState& cs) {
  cs.validate();
  const double te = cs.t_eta();
  const double delta = total_noise(cs);
  RateResult res;
  res.R = cs.nu_eff;
  res.Q = 0.0;
  res.r = 0.5 * std::log2(1.0 / (te * te * (delta + 1.0 / cs.v) * (delta + 1.0)));
  res.I_E = mutual_info_ab(cs) - res.r;
  res.feasible = res.r > 0.0;
  res.K = res.feasible ? res.R * res.r : 0.0;
  return res;
}

CvCovariance cv_covariance(const CvState& cs) {
  cs.validate();
  const double te = cs.t_eta();
  const double delta = total_noise(cs);
  const double c = std::sqrt(te * (cs.v * cs.v - 1.0));
  const double bob = te * (cs.v + delta);
  CvCovariance g = CvCovariance::Zero();
  g(0, 0) = cs.v;
  g(1, 1) = cs.v;
  g(2, 2) = bob;
  g(3, 3) = bob;
  g(0, 2) = g(2, 0) = c;
  g(1, 3) = g(3, 1) = -c;
  return g;
}

std::array<double, 2> symplectic_spectrum(const CvCovariance& gamma) {
  const Eigen::Matrix4d m = symplectic_form() * gamma;
  Eigen::EigenSolver<Eigen::Matrix4d> solver(m, false);
  std::array<double, 4> moduli{};
  for (int i = 0; i < 4; ++i) moduli[i] = std::abs(solver.eigenvalues()[i]);
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  // eigenvalues come in pairs +-i nu
  return {0.5 * (moduli[0] + moduli[1]), 0.5 * (moduli[2] + moduli[3])};
}

double conditional_symplectic_a_given_b(const CvCovariance& gamma) {
  // homodyne on x_B: gamma_A - C diag(1/gamma_xB, 0) C^T
  const Eigen::Matrix2d a = gamma.block<2, 2>(0, 0);
  const Eigen::Matrix2d c = gamma.block<2, 2>(0, 2);
  Eigen::Matrix2d pinv = Eigen::Matrix2d::Zero();
  pinv(0, 0) = 1.0 / gamma(2, 2);
  const Eigen::Matrix2d cond = a - c * pinv * c.transpose();
  return std::sqrt(cond.determinant());
}

HolevoTerms holevo_terms(const CvState& cs) {
  cs.validate();
  const double te = cs.t_eta();
  const double v = cs.v;
  const double delta = total_noise(cs);
  const double A = v * v * (1.0 - 2.0 * te) + 2.0 * te + std::pow(te * (v + delta), 2);
  const double B = std::pow(te * (v * delta + 1.0), 2);
  double disc = A * A - 4.0 * B;
  // relative guard: A^2 carries the scale of the cancellation
  if (disc < 0.0) {
    if (disc < -kDiscriminantGuard * std::max(1.0, A * A)) {
      throw std::domain_error("holevo_be_collective: non-physical state (A^2 < 4B)");
    }
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  HolevoTerms h;
  h.lambda1 = std::sqrt(0.5 * (A + root));
  // lambda1^2 lambda2^2 = B avoids cancellation in A - root
  h.lambda2 = std::sqrt(B) / h.lambda1;
  h.lambda3 = std::sqrt(v * (1.0 + v * delta) / (v + delta));
  h.chi = g_of_symplectic(h.lambda1) + g_of_symplectic(h.lambda2) - g_of_symplectic(h.lambda3);
  return h;
}

double holevo_be_collective(const CvState& cs) { return holevo_terms(cs).chi; }

RateResult rate_cv_collective(const CvState& cs) {
  cs.validate();
  RateResult res;
  res.R = cs.nu_eff;
  res.Q = 0.0;
  res.I_E = holevo_be_collective(cs);
  res.r = cs.beta * mutual_info_ab(cs) - res.I_E;
  res.feasible = res.r > 0.0;
  res.K = res.feasible ? res.R * res.r : 0.0;
  return res;
}

RateResult optimize_cv_collective(CvState cs, double v_max, OptimumReport* report) {
  const auto eval = [&](double v) {
    CvState at = cs;
    at.v = v;
    return rate_cv_collective(at);
  };
  const OptimumReport rep = maximize_log_scale(
      [&](double v) {
        const RateResult r = eval(v);
        return r.R * r.r;
      },
      1.0, v_max);
  if (report) *report = rep;
  RateResult best = eval(rep.arg);
  best.param_opt = rep.arg;
  return best;
}

}  // namespace qkd
