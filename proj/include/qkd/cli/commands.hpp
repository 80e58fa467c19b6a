#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace qkd::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInfeasible = 2 };

struct CliOptions {
  std::optional<std::string> config;
  std::optional<int> set;
  std::optional<std::string> protocol;
  std::optional<std::string> out;    // default: `out` stream
  std::optional<std::uint64_t> seed;
  std::optional<int> grid;
  std::optional<std::string> input;  // CSV for plot
};

// Each command writes its result to `out` (or the --out file) and diagnostics
// to `log`, and returns the process exit code.
int cmd_rate(const CliOptions& o, std::ostream& out, std::ostream& log);
int cmd_sweep(const CliOptions& o, std::ostream& out, std::ostream& log);
int cmd_optimize(const CliOptions& o, std::ostream& out, std::ostream& log);
int cmd_simulate(const CliOptions& o, std::ostream& out, std::ostream& log);
int cmd_plot(const CliOptions& o, std::ostream& out, std::ostream& log);
int cmd_network_cost(const CliOptions& o, std::ostream& out, std::ostream& log);
int cmd_repeater(const CliOptions& o, std::ostream& out, std::ostream& log);

/// Dispatches by subcommand name; configuration and argument errors become exit 1.
int run_command(const std::string& name, const CliOptions& o, std::ostream& out, std::ostream& log);

}  // namespace qkd::cli
