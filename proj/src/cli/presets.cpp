#include "qkd/cli/presets.hpp"

#include <stdexcept>
#include <string>

namespace qkd::cli {

DeviceSet preset_set(int id) {
  DeviceSet d;
  d.id = id;
  d.t_B = 1.0;
  d.zeta = 0.0;
  d.V_pm = 0.99;
  d.cv_beta = 0.9;
  switch (id) {
    case 1:
      d.eta = 0.1;
      d.p_d = 1e-5;
      d.V_eb = 0.96;
      d.eps_cow = 0.03;
      d.f_ec = 1.2;
      d.cv_epsilon = 0.005;
      d.cv_eta = 0.6;
      d.cv_v_el = 0.01;
      return d;
    case 2:
      d.eta = 0.2;
      d.p_d = 1e-6;
      d.V_eb = 0.99;
      d.eps_cow = 0.01;
      d.f_ec = 1.0;
      d.cv_epsilon = 0.001;
      d.cv_eta = 0.85;
      d.cv_v_el = 0.0;
      return d;
    default:
      throw std::out_of_range("unknown parameter set " + std::to_string(id) + " (expected 1 or 2)");
  }
}

RepeaterParams repeater_line(char line) {
  RepeaterParams rp;
  rp.nu_S = 1e10;
  rp.eta = 0.5;
  rp.eta_M = 0.9;
  rp.p_M = 0.9;
  rp.T_M = 10.0;
  rp.alpha_db_per_km = kDefaultAlphaDbPerKm;
  switch (line) {
    case 'a':
      rp.N = 1000;
      rp.F = 0.95;
      break;
    case 'b':
      rp.N = 1000;
      rp.F = 0.9;
      break;
    case 'c':
      rp.N = 100;
      rp.F = 0.95;
      break;
    default:
      throw std::out_of_range(std::string("unknown repeater line '") + line + "'");
  }
  return rp;
}

}  // namespace qkd::cli
