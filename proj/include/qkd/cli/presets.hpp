#pragma once

#include "qkd/repeater_network.hpp"

namespace qkd::cli {

/// Device parameters of the a-priori comparison, one field per table row.
struct DeviceSet {
  int id = 0;  // 0 for a custom set
  // BB84 and COW
  double eta = 0.0;
  double p_d = 0.0;
  double V_pm = 0.0;
  double V_eb = 0.0;
  double t_B = 1.0;
  double eps_cow = 0.0;
  double zeta = 0.0;
  double f_ec = 1.0;
  // CV
  double cv_epsilon = 0.0;
  double cv_eta = 0.0;
  double cv_v_el = 0.0;
  double cv_beta = 1.0;
};

/// Set 1 (state of the art) and set 2 (optimistic). Throws std::out_of_range otherwise.
DeviceSet preset_set(int id);

constexpr double kDefaultAlphaDbPerKm = 0.2;

/// Memory-repeater lines: (a) N = 1000, F = 0.95; (b) F = 0.9; (c) N = 100.
RepeaterParams repeater_line(char line);

}  // namespace qkd::cli
