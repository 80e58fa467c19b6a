#include "qkd/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qkd/cli/config.hpp"
#include "qkd/cli/csv.hpp"
#include "qkd/cli/svg.hpp"
#include "qkd/cli/sweep.hpp"
#include "qkd/mathcore.hpp"
#include "qkd/mc_sim.hpp"
#include "qkd/qubit_bounds.hpp"

namespace qkd::cli {
namespace {

Config load_config(const CliOptions& o) { return o.config ? Config::load(*o.config) : Config{}; }

void emit(const CliOptions& o, std::ostream& out, const std::string& text) {
  if (!o.out) {
    out << text;
    return;
  }
  std::ofstream f(*o.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write output file '" + *o.out + "'");
  f << text;
}

bool parse_bool(const std::string& v, const std::string& what) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError(what + ": expected true or false, got '" + v + "'");
}

std::optional<bool> find_bool(const Config& cfg, const std::string& section, const std::string& key) {
  const auto v = cfg.find_string(section, key);
  if (!v) return std::nullopt;
  return parse_bool(*v, "[" + section + "] " + key);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

int set_of(const CliOptions& o, const Config& cfg) {
  if (o.set) return *o.set;
  return static_cast<int>(cfg.get_int_or("scenario", "set", 1));
}

std::optional<std::string> protocol_of(const CliOptions& o, const Config& cfg) {
  if (o.protocol) return o.protocol;
  return cfg.find_string("scenario", "protocol");
}

std::string require_protocol(const CliOptions& o, const Config& cfg) {
  const auto p = protocol_of(o, cfg);
  if (!p) throw ConfigError("missing field [scenario] protocol (or --protocol)");
  if (!is_known_protocol(*p)) throw ConfigError("unknown protocol '" + *p + "'");
  return *p;
}

ProtocolOptions protocol_options(const Config& cfg) {
  ProtocolOptions po;
  po.nu_S = cfg.get_double_or("source", "nu_s_hz", 1.0);
  if (!(po.nu_S > 0.0)) throw ConfigError("[source] nu_s_hz must be positive");
  po.mu = cfg.find_double("source", "mu");
  if (po.mu && !(*po.mu > 0.0)) throw ConfigError("[source] mu must be positive");
  po.qber = cfg.find_double("source", "qber");
  if (po.qber && !(*po.qber >= 0.0 && *po.qber <= 0.5)) throw ConfigError("[source] qber must lie in [0,0.5]");
  po.cv_variance = cfg.find_double("source", "modulation_variance_snu");
  if (po.cv_variance && !(*po.cv_variance >= 1.0)) throw ConfigError("[source] modulation_variance_snu must be >= 1");
  po.eb_pair_product = cfg.get_double_or("source", "pair_product", 0.0);
  if (!(po.eb_pair_product >= 0.0 && po.eb_pair_product < 1.0))
    throw ConfigError("[source] pair_product must lie in [0,1)");
  const std::string cow = cfg.find_string("scenario", "cow_validity").value_or("constrain");
  if (cow == "constrain") {
    po.cow_mode = CowValidity::constrain;
  } else if (cow == "discard") {
    po.cow_mode = CowValidity::discard;
  } else {
    throw ConfigError("[scenario] cow_validity must be constrain or discard");
  }
  return po;
}

class KeyValue {
 public:
  void add(const std::string& k, const std::string& v) { text_ += k + "=" + v + "\n"; }
  void add(const std::string& k, double v) { add(k, std::isfinite(v) ? format_number(v) : std::string("inf")); }
  void add(const std::string& k, bool v) { add(k, std::string(v ? "true" : "false")); }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

void add_result(KeyValue& kv, const RateResult& r) {
  kv.add("R", r.R);
  kv.add("Q", r.Q);
  kv.add("I_E", r.I_E);
  kv.add("r", r.r);
  kv.add("K", r.K);
  if (r.param_opt) kv.add("param", *r.param_opt);
  kv.add("feasible", r.feasible);
  kv.add("valid", r.valid);
}

bool has_key(const RateResult& r) { return r.feasible && r.valid && r.K > 0.0; }

std::string hex_of(const BitString& bits) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int nib = 0;
    for (std::size_t j = 0; j < 4; ++j) nib = (nib << 1) | (i + j < bits.size() && bits.get(i + j) ? 1 : 0);
    out += kHex[nib];
  }
  return out;
}

}  // namespace

int cmd_rate(const CliOptions& o, std::ostream& out, std::ostream& log) {
  const Config cfg = load_config(o);
  const std::string protocol = require_protocol(o, cfg);
  const DeviceSet d = device_from_config(cfg, o.set);
  const double t = transmittance_from_config(cfg);
  const RateResult r = evaluate_protocol(protocol, d, t, protocol_options(cfg));
  KeyValue kv;
  kv.add("protocol", protocol);
  if (d.id) kv.add("set", std::to_string(d.id));
  kv.add("transmittance", t);
  add_result(kv, r);
  emit(o, out, kv.str());
  if (!has_key(r)) {
    log << "no secret key at this operating point\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

int cmd_sweep(const CliOptions& o, std::ostream& out, std::ostream& log) {
  const Config cfg = load_config(o);
  const int set = set_of(o, cfg);
  const auto protocol = protocol_of(o, cfg);
  const std::string figure = cfg.find_string("scenario", "figure").value_or(protocol ? "" : "ktall");
  const unsigned threads = static_cast<unsigned>(cfg.get_int_or("sweep", "threads", 0));
  const double alpha = cfg.get_double_or("channel", "alpha_db_per_km", kDefaultAlphaDbPerKm);
  Table table;

  if (figure == "qmem" && !protocol) {
    auto series = qmem_series();
    for (auto& s : series) s.params.alpha_db_per_km = alpha;
    const int grid = o.grid.value_or(static_cast<int>(cfg.get_int_or("sweep", "grid", 1000)));
    const double lo = cfg.get_double_or("sweep", "min", 1.0);
    const double hi = cfg.get_double_or("sweep", "max", 1000.0);
    if (!(lo > 0.0 && hi > lo)) throw ConfigError("[sweep] range must be positive and ordered");
    table = run_repeater_sweep(series, make_grid(lo, hi, grid, false), threads);
  } else {
    SweepSpec spec;
    const DeviceSet d = device_from_config(cfg, set);
    if (protocol) {
      if (!is_known_protocol(*protocol)) throw ConfigError("unknown protocol '" + *protocol + "'");
      spec.series.push_back({*protocol, *protocol, d});
    } else {
      spec = figure_spec(figure, set);
      if (figure != "trustcv")
        for (auto& s : spec.series) s.device = d;
    }
    if (const auto var = cfg.find_string("sweep", "variable")) {
      if (*var == "transmittance") {
        spec.variable = SweepVariable::transmittance;
      } else if (*var == "distance") {
        if (spec.variable != SweepVariable::distance) {
          spec.min = 0.5;
          spec.max = 400.0;
          spec.grid = 800;
          spec.log_grid = false;
        }
        spec.variable = SweepVariable::distance;
      } else {
        throw ConfigError("[sweep] variable must be transmittance or distance");
      }
    }
    spec.min = cfg.get_double_or("sweep", "min", spec.min);
    spec.max = cfg.get_double_or("sweep", "max", spec.max);
    spec.grid = o.grid.value_or(static_cast<int>(cfg.get_int_or("sweep", "grid", spec.grid)));
    if (const auto lg = find_bool(cfg, "sweep", "log_grid")) spec.log_grid = *lg;
    if (const auto fm = find_bool(cfg, "sweep", "figure_of_merit")) spec.figure_of_merit = *fm;
    spec.alpha_db_per_km = alpha;
    spec.opts = protocol_options(cfg);
    spec.threads = threads;
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    table = run_sweep(spec);
  }
  emit(o, out, emit_csv(table));
  log << "sweep: " << table.rows.size() << " rows, " << table.columns.size() << " columns\n";
  return kExitOk;
}

int cmd_optimize(const CliOptions& o, std::ostream& out, std::ostream& log) {
  const Config cfg = load_config(o);
  const std::string protocol = require_protocol(o, cfg);
  const DeviceSet d = device_from_config(cfg, o.set);
  const double t = transmittance_from_config(cfg);
  ProtocolOptions po = protocol_options(cfg);
  po.mu.reset();
  po.cv_variance.reset();
  OptimumReport rep;
  RateResult r;
  if (protocol == "eb") {
    RepetitionLimits lim;
    lim.tau_d = cfg.get_double_or("source", "dead_time_s", 0.0);
    lim.tau_d_A = cfg.get_double_or("source", "alice_dead_time_s", 0.0);
    lim.nu_max = cfg.get_double_or("source", "max_rate_hz", lim.nu_max);
    const double dt = cfg.get_double_or("source", "delta_t_s", 1e-9);
    if (!(dt > 0.0)) throw ConfigError("[source] delta_t_s must be positive");
    const double lo = cfg.get_double_or("source", "pair_rate_min_hz", 1.0);
    const double hi = cfg.get_double_or("source", "pair_rate_max_hz", 0.999 / dt);
    LinkParams lp;
    lp.t = t;
    lp.t_B = d.t_B;
    lp.eta = d.eta;
    lp.p_d = d.p_d;
    lp.V = d.V_eb;
    r = optimize_bb84_eb_cw(lp, EcModel{d.f_ec}, lim, dt, d.zeta, lo, hi, &rep);
  } else if (is_optimizable(protocol)) {
    r = evaluate_protocol(protocol, d, t, po, &rep);
  } else {
    throw ConfigError("protocol '" + protocol + "' has no free parameter to optimize");
  }
  if (!rep.unimodal) log << "warning: coarse grid is not unimodal; optimum taken from a dense grid\n";

  KeyValue kv;
  kv.add("protocol", protocol);
  kv.add("transmittance", t);
  kv.add("arg", rep.arg);
  kv.add("K", r.K);
  kv.add("R", r.R);
  kv.add("Q", r.Q);
  kv.add("r", r.r);
  kv.add("bracketed", rep.bracketed);
  kv.add("unimodal", rep.unimodal);
  if (!rep.coarse.empty()) {
    const auto best = std::max_element(rep.coarse.begin(), rep.coarse.end(),
                                       [](const GridSample& a, const GridSample& b) { return a.value < b.value; });
    const auto i = static_cast<std::size_t>(best - rep.coarse.begin());
    kv.add("coarse_points", static_cast<double>(rep.coarse.size()));
    if (i > 0) {
      kv.add("left_arg", rep.coarse[i - 1].x);
      kv.add("left_value", rep.coarse[i - 1].value);
    }
    if (i + 1 < rep.coarse.size()) {
      kv.add("right_arg", rep.coarse[i + 1].x);
      kv.add("right_value", rep.coarse[i + 1].value);
    }
  }
  emit(o, out, kv.str());
  if (!has_key(r)) {
    log << "no secret key at any parameter value\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

int cmd_simulate(const CliOptions& o, std::ostream& out, std::ostream& log) {
  const Config cfg = load_config(o);
  SimConfig sc;
  const long long n = cfg.get_int_or("simulate", "n_pulses", static_cast<long long>(sc.n_pulses));
  if (n <= 0) throw ConfigError("[simulate] n_pulses must be positive");
  sc.n_pulses = static_cast<std::uint64_t>(n);
  sc.p_ir = cfg.get_double_or("simulate", "intercept_probability", sc.p_ir);
  sc.V = cfg.get_double_or("simulate", "visibility", sc.V);
  sc.t_total = cfg.get_double_or("simulate", "transmittance", sc.t_total);
  sc.f_EC = cfg.get_double_or("simulate", "ec_inefficiency", sc.f_EC);
  sc.pa_rate = cfg.find_double("simulate", "pa_rate");
  sc.amplify = find_bool(cfg, "simulate", "amplify").value_or(true);
  const long long threads = cfg.get_int_or("simulate", "threads", 0);
  if (threads < 0) throw ConfigError("[simulate] threads must be non-negative");
  sc.threads = static_cast<unsigned>(threads);
  if (o.seed) {
    sc.seed = *o.seed;
  } else {
    const long long s = cfg.get_int_or("simulate", "seed", 1);
    if (s < 0) throw ConfigError("[simulate] seed must be non-negative");
    sc.seed = static_cast<std::uint64_t>(s);
  }
  try {
    sc.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("[simulate] ") + e.what());
  }
  const SimOutcome r = run_bb84(sc);

  Table t;
  t.columns = {"seed",      "n_pulses", "n_detected",   "n_sifted",    "n_errors",
               "qber_hat",  "eve_hits", "eve_fraction", "final_length"};
  const double sifted = static_cast<double>(r.n_sifted);
  t.rows.push_back({static_cast<double>(sc.seed), static_cast<double>(r.n_pulses),
                    static_cast<double>(r.n_detected), sifted, static_cast<double>(r.n_errors), r.qber_hat,
                    static_cast<double>(r.eve_hits),
                    r.n_sifted ? std::optional<double>(static_cast<double>(r.eve_hits) / sifted) : std::nullopt,
                    static_cast<double>(r.final_length)});
  emit(o, out, emit_csv(t));
  log << "qber_hat=" << format_number(r.qber_hat) << " sifted=" << r.n_sifted << " final_length=" << r.final_length
      << "\n";
  if (sc.amplify) {
    const std::string hex = hex_of(r.key_bits);
    if (const auto path = cfg.find_string("simulate", "key_out")) {
      std::ofstream f(*path);
      if (!f) throw ConfigError("cannot write [simulate] key_out '" + *path + "'");
      f << hex << "\n";
    } else {
      log << "key_hex=" << hex << "\n";
    }
  }
  return kExitOk;
}

int cmd_plot(const CliOptions& o, std::ostream& out, std::ostream& log) {
  const Config cfg = load_config(o);
  const auto input = o.input ? o.input : cfg.find_string("plot", "csv");
  if (!input) throw ConfigError("missing field [plot] csv (or an input CSV argument)");
  Table table;
  try {
    table = read_csv(*input);
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
  PlotSpec spec;
  spec.title = cfg.find_string("plot", "title").value_or("");
  spec.x_column = cfg.find_string("plot", "x_column").value_or("");
  spec.x_label = cfg.find_string("plot", "x_label").value_or("");
  spec.y_label = cfg.find_string("plot", "y_label").value_or(spec.y_label);
  if (const auto cols = cfg.find_string("plot", "columns")) spec.columns = split_list(*cols);
  const std::string x_name = spec.x_column.empty() && !table.columns.empty() ? table.columns.front() : spec.x_column;
  spec.x_log = find_bool(cfg, "plot", "x_log").value_or(x_name == "transmittance");
  spec.y_log = find_bool(cfg, "plot", "y_log").value_or(true);
  spec.width = static_cast<int>(cfg.get_int_or("plot", "width_px", spec.width));
  spec.height = static_cast<int>(cfg.get_int_or("plot", "height_px", spec.height));
  if (spec.width < 300 || spec.height < 200) throw ConfigError("[plot] width_px/height_px too small");
  std::string svg;
  try {
    svg = render_svg(table, spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  emit(o, out, svg);
  log << "plot: " << table.rows.size() << " points\n";
  return kExitOk;
}

int cmd_network_cost(const CliOptions& o, std::ostream& out, std::ostream& log) {
  const Config cfg = load_config(o);
  NetworkSpec ns;
  ns.L_km = cfg.get_double("network", "total_length_km");
  ns.K_target = cfg.get_double_or("network", "k_target_hz", 1.0);
  ns.C1 = cfg.get_double_or("network", "unit_cost", 1.0);
  const double alpha = cfg.get_double_or("channel", "alpha_db_per_km", kDefaultAlphaDbPerKm);
  const auto k = cfg.find_double("network", "rate_exponent");
  const auto protocol = protocol_of(o, cfg);
  const int grid = o.grid.value_or(static_cast<int>(cfg.get_int_or("sweep", "grid", 2000)));
  const double lo = cfg.get_double_or("sweep", "min", 0.1);
  const double hi = cfg.get_double_or("sweep", "max", 200.0);
  if (!(lo > 0.0 && hi > lo)) throw ConfigError("[sweep] range must be positive and ordered");
  if (grid < 2) throw ConfigError("grid must have at least 2 points");
  ns.spacing_km = make_grid(lo, hi, grid, false);

  std::function<double(double)> K_of_l;
  const double nu = cfg.get_double_or("source", "nu_s_hz", 1.0);
  if (protocol) {
    if (!is_known_protocol(*protocol)) throw ConfigError("unknown protocol '" + *protocol + "'");
    const DeviceSet d = device_from_config(cfg, set_of(o, cfg));
    const ProtocolOptions po = protocol_options(cfg);
    K_of_l = [=](double l) { return evaluate_protocol(*protocol, d, fiber_transmittance(alpha, l), po).K; };
  } else if (k) {
    if (!(*k > 0.0)) throw ConfigError("[network] rate_exponent must be positive");
    K_of_l = [=](double l) { return nu * std::pow(fiber_transmittance(alpha, l), *k); };
  } else {
    throw ConfigError("missing field [network] rate_exponent (or a protocol)");
  }
  NetworkCost nc;
  try {
    nc = network_cost(ns, K_of_l);
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("[network] ") + e.what());
  }
  Table t;
  t.columns = {"spacing_km", "figure", "cost"};
  for (std::size_t i = 0; i < ns.spacing_km.size(); ++i) {
    t.rows.push_back({ns.spacing_km[i], nc.figure[i],
                      std::isfinite(nc.cost[i]) ? std::optional<double>(nc.cost[i]) : std::nullopt});
  }
  emit(o, out, emit_csv(t));
  if (k) log << "analytic_l_opt_km=" << format_number(analytic_l_opt(*k, alpha)) << "\n";
  if (!nc.l_opt) {
    log << "no spacing yields a key\n";
    return kExitInfeasible;
  }
  log << "l_opt_km=" << format_number(*nc.l_opt) << " cost_min=" << format_number(*nc.cost_min) << "\n";
  return kExitOk;
}

int cmd_repeater(const CliOptions& o, std::ostream& out, std::ostream& log) {
  const Config cfg = load_config(o);
  const RepeaterParams rp = repeater_from_config(cfg);
  const auto variable = cfg.find_string("sweep", "variable");
  const double f_star = bisect_root([](double F) { return 1.0 - 2.0 * binary_entropy(swap_error(F)); }, 0.75, 1.0);

  if (!variable && cfg.has("channel", "length_km")) {
    const RateResult r = rate_two_link(rp);
    KeyValue kv;
    kv.add("length_km", rp.length_km);
    kv.add("direct_K", rate_direct(rp));
    kv.add("link_time_s", link_time(rp));
    add_result(kv, r);
    kv.add("fidelity_threshold", f_star);
    emit(o, out, kv.str());
    return has_key(r) ? kExitOk : kExitInfeasible;
  }

  const int grid = o.grid.value_or(static_cast<int>(cfg.get_int_or("sweep", "grid", 1000)));
  Table table;
  bool any = false;
  if (variable && *variable == "fidelity") {
    const auto fs = make_grid(cfg.get_double_or("sweep", "min", 0.75), cfg.get_double_or("sweep", "max", 1.0), grid,
                              false);
    table.columns = {"fidelity", "two_link", "two_link.R"};
    for (double F : fs) {
      RepeaterParams at = rp;
      at.F = F;
      const RateResult r = rate_two_link(at);
      table.rows.push_back({F, std::isfinite(r.R) ? std::optional<double>(r.K) : std::nullopt,
                            std::isfinite(r.R) ? std::optional<double>(r.R) : std::nullopt});
      any = any || r.K > 0.0;
    }
  } else if (!variable || *variable == "distance") {
    const double lo = cfg.get_double_or("sweep", "min", 1.0);
    const double hi = cfg.get_double_or("sweep", "max", 1000.0);
    if (!(lo > 0.0 && hi > lo)) throw ConfigError("[sweep] range must be positive and ordered");
    table = run_repeater_sweep({{"two_link", rp}}, make_grid(lo, hi, grid, false));
    const std::size_t kd = table.column_index("direct");
    const std::size_t k2 = table.column_index("two_link");
    for (const auto& row : table.rows) {
      if (!row[k2] || *row[k2] <= 0.0) continue;
      if (!any) log << "two-link rate positive from length_km=" << format_number(*row[0]) << "\n";
      any = true;
      if (*row[k2] > *row[kd]) {
        log << "crossover_length_km=" << format_number(*row[0]) << "\n";
        break;
      }
    }
  } else {
    throw ConfigError("[sweep] variable must be distance or fidelity for the repeater");
  }
  emit(o, out, emit_csv(table));
  log << "fidelity_threshold=" << format_number(f_star) << "\n";
  return any ? kExitOk : kExitInfeasible;
}

int run_command(const std::string& name, const CliOptions& o, std::ostream& out, std::ostream& log) {
  static const std::map<std::string, std::function<int(const CliOptions&, std::ostream&, std::ostream&)>> kCommands = {
      {"rate", cmd_rate},       {"sweep", cmd_sweep},
      {"optimize", cmd_optimize}, {"simulate", cmd_simulate},
      {"plot", cmd_plot},       {"network-cost", cmd_network_cost},
      {"repeater", cmd_repeater}};
  const auto it = kCommands.find(name);
  if (it == kCommands.end()) {
    log << "error: unknown command '" << name << "'\n";
    return kExitUsage;
  }
  try {
    return it->second(o, out, log);
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    log << "error: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    log << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace qkd::cli
