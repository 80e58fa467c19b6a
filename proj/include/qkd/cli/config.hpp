#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

#include "qkd/cli/presets.hpp"

namespace qkd::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key-value file with [section] headers. Lines starting with ';' or '#'
/// are comments.
class Config {
 public:
  Config() = default;
  static Config load(const std::string& path);
  static Config parse(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key) const;
  std::optional<std::string> find_string(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  std::optional<double> find_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key, double fallback) const;
  long long get_int_or(const std::string& section, const std::string& key, long long fallback) const;

  void set(const std::string& section, const std::string& key, const std::string& value);

 private:
  boost::property_tree::ptree tree_;
};

/// Device parameters: the preset named by `set_override` or [scenario] set,
/// with any [device] keys taking precedence. Without a preset every field is
/// required.
DeviceSet device_from_config(const Config& cfg, std::optional<int> set_override);

/// Channel transmittance from [channel] transmittance or length_km (with alpha_db_per_km).
double transmittance_from_config(const Config& cfg);

/// Memory-repeater parameters from [repeater], starting from line (a).
RepeaterParams repeater_from_config(const Config& cfg);

double parse_number(const std::string& text, const std::string& what);

}  // namespace qkd::cli
