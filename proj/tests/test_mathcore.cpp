#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qkd/mathcore.hpp"

using namespace qkd;

TEST_CASE("binary entropy values") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  // 30-digit reference
  CHECK(binary_entropy(0.11) == doctest::Approx(0.499915958164527995).epsilon(1e-12));
  CHECK_THROWS_AS(binary_entropy(-0.01), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(1.01), std::domain_error);
}

TEST_CASE("binary entropy symmetric and concave") {
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double p = u(g);
    CHECK(std::abs(binary_entropy(p) - binary_entropy(1.0 - p)) < 1e-12);
    const double a = u(g), b = u(g);
    CHECK(binary_entropy(0.5 * (a + b)) >= 0.5 * (binary_entropy(a) + binary_entropy(b)) - 1e-12);
  }
}

TEST_CASE("shannon entropy") {
  const std::vector<double> pure{1, 0, 0, 0};
  const std::vector<double> flat{0.25, 0.25, 0.25, 0.25};
  CHECK(shannon_entropy(pure) == 0.0);
  CHECK(shannon_entropy(flat) == doctest::Approx(2.0).epsilon(1e-14));
  const std::vector<double> bad{0.5, 0.6};
  CHECK_THROWS_AS(shannon_entropy(bad), std::domain_error);

  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double p = u(g);
    const std::vector<double> two{p, 1.0 - p};
    CHECK(std::abs(shannon_entropy(two) - binary_entropy(p)) < 1e-12);
  }

  // Bell-diagonal weights with eps_z = Q, u = v = Q: H = h(Q) + h(Q)
  const double Q = 0.05;
  const std::vector<double> lam{(1 - Q) * (1 - Q), (1 - Q) * Q, Q * (1 - Q), Q * Q};
  CHECK(shannon_entropy(lam) == doctest::Approx(2.0 * binary_entropy(Q)).epsilon(1e-12));
}

TEST_CASE("thermal entropy") {
  CHECK(thermal_entropy_g(0.0) == 0.0);
  CHECK(thermal_entropy_g(1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(thermal_entropy_g(0.5) == doctest::Approx(1.37744375108173427).epsilon(1e-12));
  CHECK_THROWS_AS(thermal_entropy_g(-1e-3), std::domain_error);

  double prev = -1.0;
  for (double x = 0.01; x <= 100.0; x *= 1.1) {
    const double gx = thermal_entropy_g(x);
    CHECK(gx > prev);
    prev = gx;
    const double h = 1e-5 * x;
    const double fd = (thermal_entropy_g(x + h) - thermal_entropy_g(x - h)) / (2 * h);
    const double exact = std::log2((x + 1) / x);
    CHECK(std::abs(fd - exact) <= 1e-6 * exact);
  }
}

TEST_CASE("poisson") {
  CHECK(poisson_p(0, 0.3) == doctest::Approx(std::exp(-0.3)).epsilon(1e-15));
  CHECK(poisson_p(1, 0.1) == doctest::Approx(0.1 * std::exp(-0.1)).epsilon(1e-14));
  CHECK(poisson_tail(2, 0.1) == doctest::Approx(0.00467884016044446952).epsilon(1e-12));
  CHECK(poisson_tail(0, 2.0) == 1.0);
  for (double mu : {0.0, 1e-4, 0.1, 1.0, 3.7, 10.0}) {
    double s = 0.0;
    for (int n = 0; n <= 60; ++n) s += poisson_p(n, mu);
    CHECK(std::abs(s - 1.0) < 1e-12);
    double direct = 0.0;
    for (int n = 2; n <= 80; ++n) direct += poisson_p(n, mu);
    CHECK(std::abs(poisson_tail(2, mu) - direct) <= 1e-12 * std::max(direct, 1e-300) + 1e-300);
  }
  // small mu: tail ~ mu^2/2 without cancellation
  CHECK(poisson_tail(2, 1e-6) == doctest::Approx(0.5e-12).epsilon(1e-5));
}

TEST_CASE("g2") {
  // for a Poisson source the estimate equals e^{mu}, tending to 1 as mu -> 0
  for (double mu : {0.1, 0.01, 1e-3}) {
    const double p1 = poisson_p(1, mu), p2 = poisson_p(2, mu);
    CHECK(g2_zero(p1, p2) == doctest::Approx(std::exp(mu)).epsilon(1e-13));
  }
  CHECK(std::abs(g2_zero(poisson_p(1, 0.05), poisson_p(2, 0.05)) - 1.0) < 0.06);
  CHECK(g2_zero(0.1, 0.0) == 0.0);
  CHECK(g2_zero(0.5, 0.125) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS(g2_zero(0.0, 0.1));
}

TEST_CASE("fiber transmittance") {
  CHECK(fiber_transmittance(0.2, 0.0) == 1.0);
  CHECK(fiber_transmittance(0.2, 50.0) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(fiber_transmittance(0.34, 10.0) == doctest::Approx(0.457088189614875029).epsilon(1e-12));
  CHECK_THROWS(fiber_transmittance(0.2, -1.0));
  for (double a : {1.0, 13.0, 77.5})
    for (double b : {0.5, 20.0, 140.0})
      CHECK(std::abs(fiber_transmittance(0.2, a + b) - fiber_transmittance(0.2, a) * fiber_transmittance(0.2, b)) <
            1e-12);
}

TEST_CASE("free-space transmittance") {
  CHECK(freespace_transmittance(0.1, 0.1, 0.0, 0.0, 5.0) == doctest::Approx(1.0));
  CHECK(freespace_transmittance(0.1, 0.1, 0.0, 0.1, 10.0) == doctest::Approx(0.794328234724281502).epsilon(1e-12));
  CHECK(freespace_transmittance(0.1, 1.0, 0.009, 0.0, 10.0) == 1.0);
  CHECK(freespace_transmittance(0.1, 0.1, 0.009, 0.0, 10.0) == doctest::Approx(0.277008310249307479).epsilon(1e-12));
  CHECK_THROWS(freespace_transmittance(0.0, 0.1, 0.0, 0.0, 10.0));
}
