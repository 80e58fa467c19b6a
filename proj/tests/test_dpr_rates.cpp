#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qkd/dpr_rates.hpp"
#include "qkd/mathcore.hpp"

using namespace qkd;

namespace {

DprParams params(double mu, double tau) {
  DprParams p;
  p.mu = mu;
  p.t = tau;
  return p;
}

double entropy2(double p) { return p <= 0.0 || p >= 1.0 ? 0.0 : -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

}  // namespace

TEST_CASE("overlap") {
  CHECK(bs_overlap_gamma(0.7, 1.0) == 1.0);
  CHECK(bs_overlap_gamma(0.0, 0.3) == 1.0);
  CHECK(bs_overlap_gamma(0.5, 0.1) == doctest::Approx(0.637628151621773).epsilon(1e-13));
}

TEST_CASE("DPS beam splitting") {
  const auto full = rate_dps_bs(params(0.3, 1.0));
  CHECK(full.I_E == 0.0);
  CHECK(full.K == doctest::Approx(1.0 - std::exp(-0.3)).epsilon(1e-14));
  CHECK(eve_info_dps_bs(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  DprParams p = params(0.2, 0.02);
  p.nu_S = 1e9;
  const double g = std::exp(-0.2 * 0.98);
  const double ie = 2.0 * entropy2((1 - g * g) / 2) - entropy2((1 - std::pow(g, 4)) / 2);
  const double K = 1e9 * (1.0 - std::exp(-0.2 * 0.02)) * (1.0 - ie);
  CHECK(std::abs(rate_dps_bs(p).K - K) <= 1e-12 * K);
}

TEST_CASE("COW beam splitting") {
  CHECK(eve_info_cow_bs(1.0) == 0.0);
  const double g = std::exp(-0.5 * 0.99);
  const double K = 0.5 * (1.0 - std::exp(-0.005)) * (1.0 - entropy2((1 - g) / 2));
  CHECK(rate_cow_bs(params(0.5, 0.01)).K == doctest::Approx(K).epsilon(1e-12));
  DprParams p = params(0.5, 0.01);
  p.f = 0.2;
  CHECK(rate_cow_bs(p).K == doctest::Approx(0.8 * K).epsilon(1e-12));
}

TEST_CASE("COW two-pulse") {
  const double mu = 0.3;
  CHECK(eve_info_cow_twopulse(mu, 1.0, 0.02) ==
        doctest::Approx(0.02 + 0.98 * entropy2((1 + std::exp(-mu)) / 2)).epsilon(1e-14));
  CHECK(eve_info_cow_twopulse(mu, 0.5, 0.0) == 1.0);
  DprParams half = params(mu, 0.1);
  half.V = 0.5;
  CHECK(rate_cow_twopulse(half, EcModel{1.0}).K == 0.0);

  // set #1: V = 0.99, eps = 3%, t_B eta = 0.1, t = 0.01
  DprParams p;
  p.t = 0.01;
  p.eta = 0.1;
  p.V = 0.99;
  p.eps = 0.03;
  p.p_d = 1e-5;
  const EcModel ec{1.2};
  const auto opt = optimize_cow_twopulse(p, ec);
  double best = 0.0, arg = 0.0;
  for (int i = 1; i <= 100000; ++i) {
    DprParams at = p;
    at.mu = i * 1e-5;
    const double K = rate_cow_twopulse(at, ec).K;
    if (K > best) best = K, arg = at.mu;
  }
  CHECK(opt.K > 0.0);
  CHECK(opt.K >= best * (1.0 - 1e-6));
  CHECK(std::abs(*opt.param_opt - arg) < 2e-5);
  CHECK(*opt.param_opt * p.t <= kCowValidityLimit);
  CHECK(opt.valid);

  // regime flag
  DprParams strong = p;
  strong.t = 1.0;
  strong.mu = 0.2;
  CHECK_FALSE(rate_cow_twopulse(strong, ec).valid);
  const auto freeopt = optimize_cow_twopulse(strong, ec, CowValidity::discard);
  const auto capped = optimize_cow_twopulse(strong, ec, CowValidity::constrain);
  CHECK(*capped.param_opt <= kCowValidityLimit + 1e-12);
  CHECK(freeopt.valid == (*freeopt.param_opt <= kCowValidityLimit));
}

TEST_CASE("COW QBER diluted by dark counts") {
  DprParams p;
  p.mu = 0.3;
  p.t = 1e-3;
  p.eta = 0.1;
  p.V = 0.99;
  p.eps = 0.03;
  p.p_d = 1e-5;
  const EcModel ec{1.2};
  DprParams dk = p;
  dk.qber_model = CowQber::with_dark_counts;
  const double s = p.mu * p.tau();
  CHECK(rate_cow_twopulse(dk, ec).Q == doctest::Approx((0.03 * s + 1e-5) / (s + 2e-5)).epsilon(1e-14));
  CHECK(rate_cow_twopulse(dk, ec).R == rate_cow_twopulse(p, ec).R);
  CHECK(rate_cow_twopulse(dk, ec).K < rate_cow_twopulse(p, ec).K);

  dk.p_d = p.p_d = 0.0;
  CHECK(rate_cow_twopulse(dk, ec).K == doctest::Approx(rate_cow_twopulse(p, ec).K).epsilon(1e-14));

  // the bit-error-only form keeps a key from dark counts alone; the diluted form does not
  dk.p_d = p.p_d = 1e-5;
  dk.t = p.t = 1e-9;
  CHECK(optimize_cow_twopulse(p, ec).K > 0.0);
  CHECK(optimize_cow_twopulse(dk, ec).K == 0.0);
}

TEST_CASE("Eve's information falls with overlap") {
  double prev_dps = 2.0, prev_cow = 2.0, prev_two = 2.0;
  for (int i = 0; i <= 1000; ++i) {
    const double g = i / 1000.0;
    const double d = eve_info_dps_bs(g), c = eve_info_cow_bs(g);
    CHECK(d <= prev_dps + 1e-12);
    CHECK(c <= prev_cow + 1e-12);
    prev_dps = d;
    prev_cow = c;
    // two-pulse: overlap e^{-mu}
    const double mu = g > 0.0 ? -std::log(g) : 50.0;
    const double tp = eve_info_cow_twopulse(mu, 0.99, 0.01);
    CHECK(tp <= prev_two + 1e-12);
    prev_two = tp;
  }
  // across the e^{-mu} = xi boundary
  double prev = 0.0;
  for (double mu = 0.01; mu < 5.0; mu += 0.01) {
    const double ie = eve_info_cow_twopulse(mu, 0.99, 0.01);
    CHECK(ie >= prev - 1e-12);
    prev = ie;
  }
}

TEST_CASE("beam-splitting rates are unimodal in mu") {
  // direction changes larger than rounding noise near I_E = 1
  const auto turns = [](const std::vector<double>& k) {
    const double tol = 1e-12 * *std::max_element(k.begin(), k.end());
    int n = 0, dir = 1;
    for (std::size_t i = 1; i < k.size(); ++i) {
      const double d = k[i] - k[i - 1];
      if (std::abs(d) <= tol) continue;
      if ((d > 0) != (dir > 0)) dir = -dir, ++n;
    }
    return n;
  };
  for (double tau : {0.5, 0.05, 1e-3}) {
    std::vector<double> kd, kc;
    for (int i = 0; i <= 2000; ++i) {
      const double mu = std::pow(10.0, -4.0 + 5.0 * i / 2000.0);
      kd.push_back(rate_dps_bs(params(mu, tau)).K);
      kc.push_back(rate_cow_bs(params(mu, tau)).K);
    }
    CHECK(turns(kd) <= 1);
    CHECK(turns(kc) <= 1);
  }
}

TEST_CASE("two-pulse attack is at least as strong as beam splitting") {
  const EcModel ec{1.0};
  for (double t : {0.9, 0.3, 0.1, 0.01, 1e-3}) {
    for (double mu = 1e-3; mu * t <= kCowValidityLimit && mu < 5.0; mu *= 1.3) {
      DprParams p = params(mu, t);
      p.V = 0.99;
      p.eps = 0.01;
      CHECK(rate_cow_twopulse(p, ec).K <= rate_cow_bs(p).K * (1.0 + 1e-12));
    }
  }
}
