#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qkd/cli/csv.hpp"
#include "qkd/cli/presets.hpp"
#include "qkd/dpr_rates.hpp"

namespace qkd::cli {

/// Knobs shared by every protocol evaluation. Unset intensities are optimized.
struct ProtocolOptions {
  double nu_S = 1.0;                    // rates come out per pulse when 1
  std::optional<double> mu;             // fixed mean photon number
  std::optional<double> qber;           // single-photon QBER override
  std::optional<double> cv_variance;    // fixed modulation variance + 1
  double eb_pair_product = 0.0;         // mu'·delta_t of the heralded source
  CowValidity cow_mode = CowValidity::constrain;
};

const std::vector<std::string>& protocol_names();
bool is_known_protocol(const std::string& name);
/// Protocols whose single free parameter is optimized.
bool is_optimizable(const std::string& name);

RateResult evaluate_protocol(const std::string& protocol, const DeviceSet& d, double t, const ProtocolOptions& opts,
                             OptimumReport* report = nullptr);

enum class SweepVariable { transmittance, distance };

struct SeriesSpec {
  std::string label;
  std::string protocol;
  DeviceSet device;
};

struct SweepSpec {
  std::vector<SeriesSpec> series;
  SweepVariable variable = SweepVariable::transmittance;
  double min = 1e-8;
  double max = 1.0;
  int grid = 161;
  bool log_grid = true;
  double alpha_db_per_km = kDefaultAlphaDbPerKm;
  bool figure_of_merit = false;  // emit l·K instead of K (distance sweeps)
  ProtocolOptions opts;
  unsigned threads = 0;

  void validate() const;
};

std::vector<double> make_grid(double min, double max, int n, bool log_scale);

/// One row per grid point; for each series the columns `label`, `label.R`
/// and `label.param`. K is 0 without key; cells of invalid results are empty.
Table run_sweep(const SweepSpec& spec);

/// Built-in comparisons: ktall, trust, trustcv, fdall. Throws std::invalid_argument.
SweepSpec figure_spec(const std::string& figure, int set);

struct RepeaterSeries {
  std::string label;
  RepeaterParams params;
};

/// Direct link against two-link repeaters over the Alice-Bob distance;
/// absolute rates in Hz. Columns direct, direct.R, then label and label.R per series.
Table run_repeater_sweep(const std::vector<RepeaterSeries>& series, const std::vector<double>& lengths_km,
                         unsigned threads = 0);

/// Lines (a), (b), (c) of the memory-repeater comparison.
std::vector<RepeaterSeries> qmem_series();

}  // namespace qkd::cli
