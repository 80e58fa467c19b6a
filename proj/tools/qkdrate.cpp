#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qkd/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace qkd::cli;
  CLI::App app{"QKD secret-key-rate calculator"};
  app.require_subcommand(1);
  CliOptions opts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config, "configuration file")->check(CLI::ExistingFile);
    sub->add_option("--set", opts.set, "device parameter set")->check(CLI::IsMember({1, 2}));
    sub->add_option("--protocol", opts.protocol, "protocol name");
    sub->add_option("--out", opts.out, "output file (default: stdout)");
    sub->add_option("--seed", opts.seed, "random seed");
    sub->add_option("--grid", opts.grid, "number of grid points")->check(CLI::Range(2, 10000000));
  };

  const char* names[][2] = {{"rate", "key rate at one operating point"},
                            {"sweep", "key rates over a grid, as CSV"},
                            {"optimize", "optimize the source intensity or modulation"},
                            {"simulate", "Monte Carlo BB84 run"},
                            {"plot", "SVG plot of a sweep CSV"},
                            {"network-cost", "cost of a chain of trusted nodes vs spacing"},
                            {"repeater", "two-link memory repeater against the direct link"}};
  for (const auto& [name, help] : names) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub);
    if (std::string(name) == "plot") sub->add_option("input", opts.input, "sweep CSV");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  return run_command(app.get_subcommands().front()->get_name(), opts, std::cout, std::cerr);
}
