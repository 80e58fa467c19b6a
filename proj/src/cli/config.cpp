#include "qkd/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>

#include "qkd/mathcore.hpp"

namespace qkd::cli {
namespace {

namespace pt = boost::property_tree;

std::string field(const std::string& section, const std::string& key) { return "[" + section + "] " + key; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// full-line '#' comments and inline "; ..." / "# ..." tails, which the INI reader keeps
std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (!t.empty() && (t[0] == '#' || t[0] == ';')) {
      out << '\n';
      continue;
    }
    for (std::size_t i = 1; i < line.size(); ++i) {
      if ((line[i] == ';' || line[i] == '#') && (line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line.erase(i);
        break;
      }
    }
    out << line << '\n';
  }
  return out.str();
}

struct DeviceKey {
  const char* key;
  double DeviceSet::*member;
};

constexpr DeviceKey kDeviceKeys[] = {
    {"detector_efficiency", &DeviceSet::eta},
    {"dark_count_per_gate", &DeviceSet::p_d},
    {"visibility_pm", &DeviceSet::V_pm},
    {"visibility_eb", &DeviceSet::V_eb},
    {"bob_transmittance", &DeviceSet::t_B},
    {"cow_bit_error", &DeviceSet::eps_cow},
    {"eb_multipair_zeta", &DeviceSet::zeta},
    {"ec_inefficiency", &DeviceSet::f_ec},
    {"cv_excess_noise_snu", &DeviceSet::cv_epsilon},
    {"cv_detector_efficiency", &DeviceSet::cv_eta},
    {"cv_electronic_noise_snu", &DeviceSet::cv_v_el},
    {"cv_reconciliation_beta", &DeviceSet::cv_beta},
};

}  // namespace

double parse_number(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ConfigError(what + ": expected a number, got '" + text + "'");
  }
  return v;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream in(strip_comments(text));
  try {
    pt::read_ini(in, c.tree_);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  return c;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find_string(section, key).has_value();
}

std::optional<std::string> Config::find_string(const std::string& section, const std::string& key) const {
  const auto sec = tree_.get_child_optional(pt::ptree::path_type(section, '\0'));
  if (!sec) return std::nullopt;
  const auto val = sec->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
  if (!val) return std::nullopt;
  return trim(*val);
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
  const auto v = find_string(section, key);
  if (!v) throw ConfigError("missing field " + field(section, key));
  return *v;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  return parse_number(get_string(section, key), field(section, key));
}

std::optional<double> Config::find_double(const std::string& section, const std::string& key) const {
  const auto v = find_string(section, key);
  if (!v) return std::nullopt;
  return parse_number(*v, field(section, key));
}

double Config::get_double_or(const std::string& section, const std::string& key, double fallback) const {
  return find_double(section, key).value_or(fallback);
}

long long Config::get_int_or(const std::string& section, const std::string& key, long long fallback) const {
  const auto v = find_string(section, key);
  if (!v) return fallback;
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (v->empty() || ec != std::errc() || ptr != v->data() + v->size()) {
    throw ConfigError(field(section, key) + ": expected an integer, got '" + *v + "'");
  }
  return out;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
  tree_.put(pt::ptree::path_type(section, '\0'), std::string{});
  tree_.get_child(pt::ptree::path_type(section, '\0')).put(pt::ptree::path_type(key, '\0'), value);
}

DeviceSet device_from_config(const Config& cfg, std::optional<int> set_override) {
  std::optional<int> set = set_override;
  if (!set && cfg.has("scenario", "set")) set = static_cast<int>(cfg.get_int_or("scenario", "set", 0));
  DeviceSet d;
  if (set) {
    try {
      d = preset_set(*set);
    } catch (const std::out_of_range& e) {
      throw ConfigError(e.what());
    }
  }
  for (const auto& k : kDeviceKeys) {
    const auto v = cfg.find_double("device", k.key);
    if (v) {
      d.*k.member = *v;
      d.id = 0;
    } else if (!set) {
      throw ConfigError("missing field " + field("device", k.key) + " (no parameter set selected)");
    }
  }
  for (const auto& k : kDeviceKeys) {
    const double v = d.*k.member;
    const std::string name = k.key;
    const bool probability = name != "ec_inefficiency" && name != "cv_excess_noise_snu" &&
                             name != "cv_electronic_noise_snu";
    if (probability && !(v >= 0.0 && v <= 1.0)) throw ConfigError(field("device", k.key) + " must lie in [0,1]");
    if (!probability && !(v >= 0.0)) throw ConfigError(field("device", k.key) + " must be non-negative");
  }
  if (d.f_ec < 1.0) throw ConfigError(field("device", "ec_inefficiency") + " must be >= 1");
  if (!(d.cv_beta > 0.0)) throw ConfigError(field("device", "cv_reconciliation_beta") + " must be positive");
  if (!(d.cv_eta > 0.0)) throw ConfigError(field("device", "cv_detector_efficiency") + " must be positive");
  return d;
}

double transmittance_from_config(const Config& cfg) {
  if (const auto t = cfg.find_double("channel", "transmittance")) {
    if (!(*t > 0.0 && *t <= 1.0)) throw ConfigError(field("channel", "transmittance") + " must lie in (0,1]");
    return *t;
  }
  if (const auto l = cfg.find_double("channel", "length_km")) {
    const double alpha = cfg.get_double_or("channel", "alpha_db_per_km", kDefaultAlphaDbPerKm);
    if (*l < 0.0 || alpha < 0.0) throw ConfigError("[channel] length_km and alpha_db_per_km must be non-negative");
    return fiber_transmittance(alpha, *l);
  }
  throw ConfigError("missing field [channel] transmittance or [channel] length_km");
}

RepeaterParams repeater_from_config(const Config& cfg) {
  RepeaterParams rp = repeater_line(cfg.find_string("repeater", "line").value_or("a").at(0));
  rp.nu_S = cfg.get_double_or("repeater", "source_rate_hz", rp.nu_S);
  rp.eta = cfg.get_double_or("repeater", "detector_efficiency", rp.eta);
  rp.eta_M = cfg.get_double_or("repeater", "bsm_detector_efficiency", rp.eta_M);
  rp.p_M = cfg.get_double_or("repeater", "memory_efficiency", rp.p_M);
  rp.N = static_cast<int>(cfg.get_int_or("repeater", "memory_modes", rp.N));
  rp.T_M = cfg.get_double_or("repeater", "memory_lifetime_s", rp.T_M);
  rp.F = cfg.get_double_or("repeater", "fidelity", rp.F);
  rp.alpha_db_per_km = cfg.get_double_or("channel", "alpha_db_per_km", rp.alpha_db_per_km);
  rp.length_km = cfg.get_double_or("channel", "length_km", 0.0);
  rp.c_fiber_km_per_s = cfg.get_double_or("repeater", "fiber_light_speed_km_per_s", rp.c_fiber_km_per_s);
  try {
    rp.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("[repeater] ") + e.what());
  }
  return rp;
}

}  // namespace qkd::cli
