#include "qkd/cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "qkd/cv_rates.hpp"
#include "qkd/mathcore.hpp"

namespace qkd::cli {
namespace {

constexpr double kMuMin = 1e-6;
constexpr double kMuMaxDv = 1.0;
constexpr double kMuMaxDpr = 10.0;

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

LinkParams link_for(const DeviceSet& d, double t, double V, double nu) {
  LinkParams lp;
  lp.t = t;
  lp.t_B = d.t_B;
  lp.eta = d.eta;
  lp.p_d = d.p_d;
  lp.V = V;
  lp.nu_eff = nu;
  return lp;
}

RateResult with_param(RateResult r, double p) {
  r.param_opt = p;
  return r;
}

RateResult optimize_bs(const std::function<RateResult(double)>& eval, OptimumReport* report) {
  const OptimumReport rep = maximize_log_scale([&](double mu) { return eval(mu).K; }, kMuMin, kMuMaxDpr);
  if (report) *report = rep;
  return with_param(eval(rep.arg), rep.arg);
}

const std::vector<std::string> kProtocols = {"single_photon", "wcp",   "decoy",  "eb",        "cv",
                                             "cow",           "wcp_upper", "decoy_upper", "dps_bs", "cow_bs"};

}  // namespace

const std::vector<std::string>& protocol_names() { return kProtocols; }

bool is_known_protocol(const std::string& name) {
  return std::find(kProtocols.begin(), kProtocols.end(), name) != kProtocols.end();
}

bool is_optimizable(const std::string& name) { return is_known_protocol(name) && name != "single_photon" && name != "eb"; }

RateResult evaluate_protocol(const std::string& protocol, const DeviceSet& d, double t, const ProtocolOptions& o,
                             OptimumReport* report) {
  const EcModel ec{d.f_ec};
  const LinkParams lp = link_for(d, t, d.V_pm, o.nu_S);
  if (protocol == "single_photon") {
    ExpectedStats st = expected_dv_stats(PhotonStatistics::single_photon(), lp);
    if (o.qber) {
      require_probability(*o.qber, "qber");
      st.Q = *o.qber;
      st.eps1 = *o.qber;
    }
    return rate_bb84_single_photon(st, ec);
  }
  if (protocol == "wcp") {
    if (o.mu) return with_param(rate_bb84_wcp_nodecoy(PhotonStatistics::poissonian(*o.mu), lp, ec), *o.mu);
    return optimize_bb84_wcp_nodecoy(lp, ec, {kMuMin, kMuMaxDv}, report);
  }
  if (protocol == "decoy") {
    if (o.mu) return with_param(rate_bb84_decoy(PhotonStatistics::poissonian(*o.mu), lp, ec), *o.mu);
    return optimize_bb84_decoy(lp, ec, {kMuMin, kMuMaxDv}, report);
  }
  if (protocol == "wcp_upper" || protocol == "decoy_upper") {
    const bool decoy = protocol == "decoy_upper";
    if (o.mu)
      return with_param(rate_bb84_upperbound_calibrated(PhotonStatistics::poissonian(*o.mu), lp, ec, decoy), *o.mu);
    return optimize_bb84_upper(lp, ec, decoy, {kMuMin, kMuMaxDv}, report);
  }
  if (protocol == "eb") {
    return rate_bb84_eb_cw(link_for(d, t, d.V_eb, o.nu_S), ec, o.eb_pair_product, d.zeta);
  }
  if (protocol == "cv") {
    CvState cs;
    cs.t = t;
    cs.eta = d.cv_eta;
    cs.epsilon = d.cv_epsilon;
    cs.v_el = d.cv_v_el;
    cs.beta = d.cv_beta;
    cs.nu_eff = o.nu_S;
    if (o.cv_variance) {
      cs.v = *o.cv_variance;
      return with_param(rate_cv_collective(cs), cs.v);
    }
    return optimize_cv_collective(cs, 1e4, report);
  }
  DprParams p = DprParams::from_link(o.mu.value_or(0.0), lp, d.eps_cow, 0.0, o.nu_S);
  p.qber_model = CowQber::with_dark_counts;
  if (protocol == "cow") {
    if (o.mu) return with_param(rate_cow_twopulse(p, ec), *o.mu);
    return optimize_cow_twopulse(p, ec, o.cow_mode, kMuMin, kMuMaxDv, report);
  }
  if (protocol == "dps_bs" || protocol == "cow_bs") {
    const bool dps = protocol == "dps_bs";
    auto eval = [&](double mu) {
      DprParams at = p;
      at.mu = mu;
      return dps ? rate_dps_bs(at) : rate_cow_bs(at);
    };
    if (o.mu) return with_param(eval(*o.mu), *o.mu);
    return optimize_bs(eval, report);
  }
  throw std::invalid_argument("unknown protocol '" + protocol + "'");
}

void SweepSpec::validate() const {
  if (series.empty()) throw std::invalid_argument("sweep has no series");
  if (grid < 2) throw std::invalid_argument("sweep grid must have at least 2 points");
  if (!(min > 0.0 && max > min)) throw std::invalid_argument("sweep range must be positive and ordered");
  if (variable == SweepVariable::transmittance && max > 1.0)
    throw std::invalid_argument("transmittance range must lie in (0,1]");
  for (const auto& s : series)
    if (!is_known_protocol(s.protocol)) throw std::invalid_argument("unknown protocol '" + s.protocol + "'");
}

std::vector<double> make_grid(double min, double max, int n, bool log_scale) {
  if (n < 2) throw std::invalid_argument("grid must have at least 2 points");
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / (n - 1);
    xs[i] = log_scale ? std::exp(std::log(min) + f * (std::log(max) - std::log(min))) : min + f * (max - min);
  }
  xs.front() = min;
  xs.back() = max;
  return xs;
}

Table run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto xs = make_grid(spec.min, spec.max, spec.grid, spec.log_grid);
  Table table;
  table.columns.push_back(spec.variable == SweepVariable::transmittance ? "transmittance" : "length_km");
  for (const auto& s : spec.series) {
    table.columns.push_back(s.label);
    table.columns.push_back(s.label + ".R");
    table.columns.push_back(s.label + ".param");
  }
  table.rows.assign(xs.size(), std::vector<std::optional<double>>(table.columns.size()));
  parallel_for(xs.size(), spec.threads, [&](std::size_t i) {
    const double x = xs[i];
    const double t =
        spec.variable == SweepVariable::transmittance ? x : fiber_transmittance(spec.alpha_db_per_km, x);
    auto& row = table.rows[i];
    row[0] = x;
    for (std::size_t k = 0; k < spec.series.size(); ++k) {
      const auto& s = spec.series[k];
      const RateResult r = evaluate_protocol(s.protocol, s.device, t, spec.opts);
      if (!r.valid || !std::isfinite(r.R) || !std::isfinite(r.K)) continue;
      row[1 + 3 * k] = spec.figure_of_merit ? x * r.K : r.K;
      row[2 + 3 * k] = r.R;
      if (r.K > 0.0 && r.param_opt) row[3 + 3 * k] = *r.param_opt;
    }
  });
  return table;
}

SweepSpec figure_spec(const std::string& figure, int set) {
  const DeviceSet d = preset_set(set);
  SweepSpec spec;
  auto add = [&](const std::string& protocol) { spec.series.push_back({protocol, protocol, d}); };
  if (figure == "ktall" || figure == "fdall") {
    for (const char* p : {"single_photon", "wcp", "decoy", "eb", "cv", "cow"}) add(p);
    if (figure == "fdall") {
      spec.variable = SweepVariable::distance;
      spec.min = 0.5;
      spec.max = 400.0;
      spec.grid = 800;
      spec.log_grid = false;
      spec.figure_of_merit = true;
    }
    return spec;
  }
  if (figure == "trust") {
    for (const char* p : {"wcp", "decoy", "wcp_upper", "decoy_upper"}) add(p);
    return spec;
  }
  if (figure == "trustcv") {
    spec.series.push_back({"cv_set1", "cv", preset_set(1)});
    spec.series.push_back({"cv_set2", "cv", preset_set(2)});
    return spec;
  }
  throw std::invalid_argument("unknown figure '" + figure + "' (expected ktall, trust, trustcv, fdall or qmem)");
}

Table run_repeater_sweep(const std::vector<RepeaterSeries>& series, const std::vector<double>& lengths_km,
                         unsigned threads) {
  if (series.empty()) throw std::invalid_argument("repeater sweep has no series");
  for (const auto& s : series) s.params.validate();
  Table table;
  table.columns = {"length_km", "direct", "direct.R"};
  for (const auto& s : series) {
    table.columns.push_back(s.label);
    table.columns.push_back(s.label + ".R");
  }
  table.rows.assign(lengths_km.size(), std::vector<std::optional<double>>(table.columns.size()));
  parallel_for(lengths_km.size(), threads, [&](std::size_t i) {
    auto& row = table.rows[i];
    const double l = lengths_km[i];
    row[0] = l;
    RepeaterParams direct = series.front().params;
    direct.length_km = l;
    row[1] = rate_direct(direct);
    row[2] = row[1];
    for (std::size_t k = 0; k < series.size(); ++k) {
      RepeaterParams rp = series[k].params;
      rp.length_km = l;
      const RateResult r = rate_two_link(rp);
      if (!std::isfinite(r.R)) continue;
      row[3 + 2 * k] = r.K;
      row[4 + 2 * k] = r.R;
    }
  });
  return table;
}

std::vector<RepeaterSeries> qmem_series() {
  return {{"two_link_a", repeater_line('a')}, {"two_link_b", repeater_line('b')}, {"two_link_c", repeater_line('c')}};
}

}  // namespace qkd::cli
