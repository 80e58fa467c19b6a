#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "qkd/mathcore.hpp"
#include "qkd/optimize.hpp"
#include "qkd/repeater_network.hpp"

using namespace qkd;

namespace {

RepeaterParams line_a(double ell) {
  RepeaterParams rp;
  rp.length_km = ell;
  return rp;
}

}  // namespace

TEST_CASE("direct link") {
  CHECK(rate_direct(line_a(0.0)) == doctest::Approx(1e10 * 0.25).epsilon(1e-14));
  CHECK(rate_direct(line_a(500.0)) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(rate_direct(line_a(250.0)) / rate_direct(line_a(500.0)) == doctest::Approx(1e5).epsilon(1e-12));
}

TEST_CASE("expected rounds") {
  CHECK(expected_rounds(1.0) == 1.0);
  CHECK(expected_rounds(0.5) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS(expected_rounds(0.0));

  // the later of two independent geometric successes
  std::mt19937_64 g(42);
  for (double x : {0.01, 0.1, 0.5}) {
    std::geometric_distribution<long> geo(x);
    const int trials = 1000000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < trials; ++i) {
      const double n = 1.0 + static_cast<double>(std::max(geo(g), geo(g)));
      sum += n;
      sq += n * n;
    }
    const double mean = sum / trials;
    const double se = std::sqrt((sq / trials - mean * mean) / trials);
    CHECK(std::abs(mean - expected_rounds(x)) < 3.0 * se);
  }
}

TEST_CASE("two-link repeater") {
  RepeaterParams rp = line_a(300.0);
  rp.F = 1.0;
  const auto ideal = rate_two_link(rp);
  CHECK(link_time(rp) < rp.T_M);
  CHECK(ideal.K == doctest::Approx(ideal.R).epsilon(1e-15));
  CHECK(ideal.R == doctest::Approx(0.5 * 0.81 * 0.81 / link_time(rp)).epsilon(1e-14));

  const double F_star = bisect_root(
      [](double F) {
        RepeaterParams p = line_a(300.0);
        p.F = F;
        return rate_two_link(p).r;
      },
      0.75, 1.0);
  CHECK(std::abs(F_star - 0.835) <= 1e-3);
  for (double F : {F_star - 1e-4, F_star + 1e-4}) {
    RepeaterParams p = line_a(300.0);
    p.F = F;
    CHECK((rate_two_link(p).K > 0.0) == (F > F_star));
  }

  // line (a) overtakes the direct link between 400 and 600 km
  const auto gap = [](double ell) { return rate_two_link(line_a(ell)).K - rate_direct(line_a(ell)); };
  CHECK(gap(400.0) < 0.0);
  CHECK(gap(600.0) > 0.0);
  const double cross = bisect_root(gap, 400.0, 600.0);
  CHECK(cross > 400.0);
  CHECK(cross < 600.0);
}

TEST_CASE("link time approximation") {
  RepeaterParams rp = line_a(600.0);
  rp.N = 1;
  CHECK(link_time_approx(rp) / link_time(rp) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("pair rate scales as sqrt(t) at fixed length") {
  // vary attenuation so that only t moves; one mode keeps x small
  RepeaterParams rp = line_a(100.0);
  rp.N = 1;
  std::vector<double> lx, ly;
  for (int i = 0; i <= 30; ++i) {
    const double t = std::pow(10.0, -6.0 + 3.0 * i / 30.0);
    rp.alpha_db_per_km = -10.0 * std::log10(t) / rp.length_km;
    const auto res = rate_two_link(rp);
    REQUIRE(res.R > 0.0);
    lx.push_back(std::log(t));
    ly.push_back(std::log(res.R));
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::abs(slope - 0.5) < 0.01);
}

TEST_CASE("memory lifetime is a sharp cut") {
  RepeaterParams rp = line_a(0.0);
  rp.N = 10;
  int zero = 0, positive = 0;
  for (double ell = 10.0; ell <= 1000.0; ell += 5.0) {
    rp.length_km = ell;
    const auto res = rate_two_link(rp);
    if (link_time(rp) >= rp.T_M) {
      CHECK(res.K == 0.0);
      ++zero;
    } else {
      CHECK(res.K > 0.0);
      ++positive;
    }
  }
  CHECK(zero > 0);
  CHECK(positive > 0);
}

TEST_CASE("network cost") {
  std::vector<double> grid;
  for (int i = 1; i <= 2000; ++i) grid.push_back(0.05 * i);
  const NetworkSpec ns{1000.0, 1e6, 1.0, grid};
  for (double k : {1.0, 2.0}) {
    const auto K = [k](double l) { return std::pow(fiber_transmittance(0.2, l), k); };
    const auto nc = network_cost(ns, K);
    REQUIRE(nc.l_opt);
    CHECK(std::abs(*nc.l_opt - analytic_l_opt(k, 0.2)) <= 0.05);
    const auto scaled = network_cost(ns, [&](double l) { return 37.5 * K(l); });
    CHECK(*scaled.l_opt == *nc.l_opt);
    const std::size_t i = static_cast<std::size_t>(std::round(*nc.l_opt / 0.05)) - 1;
    CHECK(nc.cost[i] == doctest::Approx(1000.0 / *nc.l_opt * 1e6 / K(*nc.l_opt)));
  }
  CHECK(analytic_l_opt(1.0, 0.2) == doctest::Approx(21.714724095).epsilon(1e-9));
  CHECK(analytic_l_opt(2.0, 0.2) == doctest::Approx(0.5 * analytic_l_opt(1.0, 0.2)).epsilon(1e-15));

  const auto none = network_cost(ns, [](double) { return 0.0; });
  CHECK_FALSE(none.l_opt);
  CHECK(std::isinf(none.cost.front()));
}
