#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "qkd/cv_rates.hpp"
#include "qkd/mathcore.hpp"

using namespace qkd;

namespace {

CvState set1_cv(double t) { return {10.0, t, 0.6, 0.005, 0.01, 0.9, 1.0}; }

CvState random_state(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CvState cs;
  cs.v = std::pow(10.0, 3.0 * u(g));
  cs.t = std::pow(10.0, -3.0 * u(g));
  cs.eta = 0.3 + 0.7 * u(g);
  cs.epsilon = 0.2 * u(g);
  cs.v_el = 0.2 * u(g);
  cs.beta = 1.0;
  return cs;
}

// v_{X|Y} = <x^2> - <xy>^2 / <y^2>
double cond_var(double xx, double xy, double yy) { return xx - xy * xy / yy; }

}  // namespace

TEST_CASE("total noise") {
  CHECK(total_noise({1.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0}) == 0.0);
  CHECK(total_noise({1.0, 0.5, 1.0, 0.0, 0.0, 1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
  const CvState cs = set1_cv(0.1);
  CHECK(std::abs(total_noise(cs) - total_noise_compact(cs)) < 1e-12);
  CvState bad = cs;
  bad.eta = 0.0;
  CHECK_THROWS(total_noise(bad));
}

TEST_CASE("mutual information") {
  CHECK(mutual_info_ab({1.0, 0.3, 0.6, 0.01, 0.0, 1.0, 1.0}) == 0.0);
  CHECK(mutual_info_ab({2.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-15));
  // delta = 1 at t = 1/2
  CHECK(mutual_info_ab({11.0, 0.5, 1.0, 0.0, 0.0, 1.0, 1.0}) == doctest::Approx(0.5 * std::log2(6.0)).epsilon(1e-14));
}

TEST_CASE("individual attacks") {
  const CvState lo{10.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0};
  CvState hi = lo;
  hi.v = 100.0;
  const double r10 = rate_cv_individual(lo).r;
  CHECK(r10 > 0.0);
  CHECK(rate_cv_individual(hi).r > r10);

  CvState edge{1e5, 1e-4, 1.0, 0.49, 0.0, 1.0, 1.0};
  CHECK(rate_cv_individual(edge).r > 0.0);
  edge.epsilon = 0.51;
  CHECK(rate_cv_individual(edge).r < 0.0);
  CHECK(rate_cv_individual(edge).K == 0.0);

  // conditional variances from the covariance matrix
  const CvState cs{20.0, 0.5, 1.0, 0.0, 0.0, 1.0, 1.0};
  const CvCovariance gmat = cv_covariance(cs);
  const double v_b_a = cond_var(gmat(2, 2), gmat(0, 2), gmat(0, 0));
  const double v_b_am = cond_var(gmat(2, 2), gmat(0, 2), gmat(0, 0) + 1.0);
  CHECK(v_b_a == doctest::Approx(cond_var_b_given_a_hom(cs)).epsilon(1e-12));
  CHECK(v_b_am == doctest::Approx(cond_var_b_given_a_het(cs)).epsilon(1e-12));
  CHECK(rate_cv_individual(cs).r == doctest::Approx(0.5 * std::log2(1.0 / (v_b_a * v_b_am))).epsilon(1e-12));
  CHECK(cond_var_b_given_e_bound(cs) * cond_var_b_given_a_hom(cs) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("covariance matrix") {
  const CvState flat{1.0, 0.4, 0.8, 0.02, 0.01, 1.0, 1.0};
  const CvCovariance g = cv_covariance(flat);
  const double bob = flat.t_eta() * (1.0 + total_noise(flat));
  CHECK(g(0, 0) == 1.0);
  CHECK(g(1, 1) == 1.0);
  CHECK(g(2, 2) == doctest::Approx(bob));
  CHECK(g(3, 3) == doctest::Approx(bob));
  CHECK(g(0, 2) == 0.0);
  CHECK(g(1, 3) == 0.0);

  const auto pure = symplectic_spectrum(cv_covariance({50.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0}));
  CHECK(std::abs(pure[0] - 1.0) < 1e-9);
  CHECK(std::abs(pure[1] - 1.0) < 1e-9);
}

TEST_CASE("closed-form symplectic eigenvalues match the spectrum of the covariance") {
  std::mt19937_64 g(2024);
  for (int i = 0; i < 1000; ++i) {
    const CvState cs = random_state(g);
    const CvCovariance gm = cv_covariance(cs);
    CHECK((gm - gm.transpose()).norm() == 0.0);
    const auto spectrum = symplectic_spectrum(gm);
    CHECK(spectrum[1] >= 1.0 - 1e-9);
    const HolevoTerms h = holevo_terms(cs);
    CHECK(std::abs(h.lambda1 - spectrum[0]) <= 1e-9 * spectrum[0]);
    CHECK(std::abs(h.lambda2 - spectrum[1]) <= 1e-9 * spectrum[0]);
    CHECK(std::abs(h.lambda3 - conditional_symplectic_a_given_b(gm)) <= 1e-9 * h.lambda3);
    CHECK(h.chi >= -1e-12);
  }
}

TEST_CASE("Holevo quantity") {
  // no modulation over a noiseless channel: Eve learns nothing
  CHECK(std::abs(holevo_be_collective({1.0, 0.3, 0.6, 0.0, 0.0, 1.0, 1.0})) < 1e-10);
  // with noise Eve still purifies Bob's thermal state, chi = g((b - 1)/2), b = t eta (1 + delta)
  const CvState cs{1.0, 0.3, 0.6, 0.01, 0.01, 1.0, 1.0};
  const double b = cs.t_eta() * (1.0 + total_noise(cs));
  CHECK(holevo_be_collective(cs) == doctest::Approx(thermal_entropy_g(0.5 * (b - 1.0))).epsilon(1e-10));

  const CvState pure{30.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0};
  const auto spectrum = symplectic_spectrum(cv_covariance(pure));
  const HolevoTerms h = holevo_terms(pure);
  CHECK(std::abs(h.lambda1 - spectrum[0]) < 1e-8);
  CHECK(std::abs(h.lambda2 - spectrum[1]) < 1e-8);
  CHECK(std::abs(h.chi) < 1e-8);
}

TEST_CASE("collective attacks") {
  const CvState none{1.0, 0.5, 0.9, 0.01, 0.0, 1.0, 1.0};
  CHECK(rate_cv_collective(none).K == 0.0);

  CvState cs = set1_cv(1.0);
  CvState ideal = cs;
  ideal.beta = 1.0;
  CHECK(rate_cv_collective(cs).K < rate_cv_collective(ideal).K);

  OptimumReport rep;
  const auto opt = optimize_cv_collective(cs, 1e4, &rep);
  CHECK(opt.K > 0.0);
  REQUIRE(opt.param_opt);
  CHECK(*opt.param_opt < 1e4);
  double best = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    CvState at = cs;
    at.v = std::pow(10.0, 4.0 * i / 4000.0);
    best = std::max(best, rate_cv_collective(at).K);
  }
  CHECK(opt.K >= best * (1.0 - 1e-6));

  std::mt19937_64 g(99);
  for (int i = 0; i < 500; ++i) {
    const CvState s = random_state(g);
    CHECK(rate_cv_collective(s).r <= rate_cv_individual(s).r + 1e-12);
  }
}

TEST_CASE("optimized collective rate falls with distance and excess noise") {
  double prev = 1e300;
  for (int i = 0; i < 40; ++i) {
    const double K = optimize_cv_collective(set1_cv(fiber_transmittance(0.2, 2.0 * i))).K;
    CHECK(K <= prev * (1.0 + 1e-9));
    prev = K;
  }
  prev = 1e300;
  for (int i = 0; i < 40; ++i) {
    CvState cs = set1_cv(0.5);
    cs.epsilon = 0.005 * i;
    const double K = optimize_cv_collective(cs).K;
    CHECK(K <= prev * (1.0 + 1e-9));
    prev = K;
  }
}
