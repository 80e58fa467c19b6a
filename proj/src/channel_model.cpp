#include "qkd/channel_model.hpp"

#include <cmath>
#include <stdexcept>

#include "qkd/mathcore.hpp"

namespace qkd {
namespace {

struct ClickSums {
  double signal = 0.0;    // sum_{n>=1} p(n) [1 - (1-T)^n]
  double no_click = 0.0;  // sum_{n>=0} p(n) (1-T)^n
};

// Photon-number series, truncated once a term falls below 1e-18 of the
// accumulated source mass past the mode of the distribution.
ClickSums click_sums(const PhotonStatistics& ps, double T) {
  ClickSums s;
  const int limit = ps.support_limit();
  const double miss = 1.0 - T;
  double mass = 0.0;
  double miss_pow = 1.0;
  for (int n = 0; n <= limit; ++n) {
    const double p = ps.p_n(n);
    mass += p;
    const double sig = p * (1.0 - miss_pow);
    s.signal += sig;
    s.no_click += p * miss_pow;
    miss_pow *= miss;
    if (n > ps.mu() && p < 1e-18 * mass) break;
  }
  return s;
}

ExpectedStats assemble(const PhotonStatistics& ps, const LinkParams& lp, double line_error) {
  const ClickSums sums = click_sums(ps, lp.forwarded());
  ExpectedStats st;
  st.nu_eff = lp.nu_eff;
  st.P_sig = sums.signal;
  st.P_dark = 2.0 * lp.p_d * sums.no_click;
  const double click = st.P_sig + st.P_dark;
  if (click <= 0.0) throw std::domain_error("expected stats: no detections (P + P_d = 0)");
  st.R = lp.nu_eff * click;
  st.Q = (line_error * st.P_sig + 0.5 * st.P_dark) / click;
  st.Y0 = 2.0 * lp.p_d * ps.p_vac() / click;
  st.Y1 = ps.p_single() * lp.forwarded() / click;
  st.eps1 = st.Q;
  st.p_multi = ps.p_multi();
  return st;
}

}  // namespace

void LinkParams::validate() const {
  require_probability(t, "link t");
  require_probability(t_B, "link t_B");
  require_probability(eta, "link eta");
  require_probability(p_d, "link p_d");
  require_probability(V, "link V");
  if (!(nu_eff > 0.0)) throw std::domain_error("link nu_eff must be positive");
}

double double_pair_error(double mu_prime, double delta_t) { return 0.5 * mu_prime * delta_t; }

ExpectedStats expected_dv_stats(const PhotonStatistics& ps, const LinkParams& lp) {
  lp.validate();
  return assemble(ps, lp, 0.5 * (1.0 - lp.V));
}

ExpectedStats expected_eb_stats(const PhotonStatistics& ps, const LinkParams& lp) {
  lp.validate();
  if (ps.kind() != SourceKind::heralded_pair_cw) {
    throw std::invalid_argument("expected_eb_stats: requires a heralded_pair_cw source");
  }
  const double eps_pair = double_pair_error(ps.mu(), ps.delta_t());
  return assemble(ps, lp, 0.5 * (1.0 - lp.V) + eps_pair);
}

}  // namespace qkd
