#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>

#include "doctest.h"
#include "qkd/sources.hpp"

using namespace qkd;

TEST_CASE("photon-number accessors") {
  const auto sp = PhotonStatistics::single_photon();
  CHECK(sp.p_single() == 1.0);
  CHECK(sp.p_multi() == 0.0);
  CHECK(sp.p_vac() == 0.0);

  const auto wcp = PhotonStatistics::poissonian(0.1);
  CHECK(wcp.p_single() == doctest::Approx(0.1 * std::exp(-0.1)).epsilon(1e-14));
  CHECK(wcp.p_multi() == doctest::Approx(1.0 - std::exp(-0.1) * 1.1).epsilon(1e-10));
  CHECK(wcp.p_vac() == doctest::Approx(std::exp(-0.1)).epsilon(1e-15));

  const auto pulsed = PhotonStatistics::heralded_pair_pulsed(0.05);
  CHECK(pulsed.p_n(2) == doctest::Approx(0.001875).epsilon(1e-14));
  CHECK(pulsed.p_single() == 0.05);
  CHECK(pulsed.p_vac() == doctest::Approx(1.0 - 0.05 - 0.001875).epsilon(1e-14));
  CHECK_THROWS(PhotonStatistics::heralded_pair_pulsed(0.25));

  const auto cw = PhotonStatistics::heralded_pair_cw(1e6, 1e-9);
  CHECK(cw.p_multi() == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(cw.p_single() == doctest::Approx(1.0 - 1e-3).epsilon(1e-12));
  CHECK(cw.p_vac() == 0.0);
  CHECK_THROWS(PhotonStatistics::heralded_pair_cw(2e9, 1e-9));
  CHECK_THROWS(PhotonStatistics::poissonian(-0.1));
}

TEST_CASE("poissonian normalization") {
  for (double mu : {1e-5, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) {
    const auto ps = PhotonStatistics::poissonian(mu);
    CHECK(std::abs(ps.p_vac() + ps.p_single() + ps.p_multi() - 1.0) < 1e-12);
  }
}

TEST_CASE("pulsed repetition rate") {
  RepetitionLimits lim;
  lim.nu_max = 1e7;
  CHECK(pulsed_repetition_rate(lim, 0.1, 0.1, 1, 0.1) == 1e7);

  lim.nu_max = 1e9;
  lim.tau_d = 1e-6;
  CHECK(pulsed_repetition_rate(lim, 0.1, 0.1, 1.0, 1.0) == doctest::Approx(1e8).epsilon(1e-12));
  lim.T_dc = 1e-7;
  CHECK(pulsed_repetition_rate(lim, 0.1, 0.1, 1.0, 1.0) == doctest::Approx(1e7).epsilon(1e-12));

  lim.T_dc = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (double mu = 1e-4; mu <= 1.0; mu *= 1.5) {
    const double r = pulsed_repetition_rate(lim, mu, 0.3, 0.9, 0.2);
    CHECK(r <= prev);
    prev = r;
  }
  prev = std::numeric_limits<double>::infinity();
  for (double td = 1e-10; td <= 1e-4; td *= 2.0) {
    lim.tau_d = td;
    const double r = pulsed_repetition_rate(lim, 0.5, 0.3, 0.9, 0.2);
    CHECK(r <= prev);
    prev = r;
  }
}

TEST_CASE("cw repetition rate") {
  RepetitionLimits lim;
  CHECK(cw_repetition_rate(lim, 1e6, 1.0, 1.0, 1.0, 0.0) == 1e6);
  CHECK(cw_repetition_rate(lim, 1e6, 1.0, 1.0, 1.0, 1e-9) == 1e6);
  lim.tau_d = 1e-6;
  CHECK(cw_repetition_rate(lim, 1e7, 0.5, 1.0, 1.0, 1e-9) == doctest::Approx(2e6).epsilon(1e-12));

  lim.tau_d_A = 1e-6;
  lim.eta_A = 0.5;
  lim.t_A = 0.8;
  for (double mu_p : {1e5, 1e6, 1e7, 1e8}) {
    const double expect = std::min({0.4 * mu_p, 1e6, 1.0 / (1e-6 * 0.3 * 0.2), 1e8});
    CHECK(cw_repetition_rate(lim, mu_p, 0.3, 1.0, 0.2, 1e-8) == expect);
  }
}
