#pragma once

#include <string>
#include <vector>

#include "qkd/cli/csv.hpp"

namespace qkd::cli {

struct PlotSpec {
  std::string title;
  std::string x_column;              // empty: first column
  std::string x_label;               // empty: x column name
  std::string y_label = "K";
  bool x_log = true;
  bool y_log = true;
  std::vector<std::string> columns;  // empty: every column without a '.' suffix
  int width = 800;
  int height = 520;
};

/// Line plot with one series per column. Non-positive or empty cells break the
/// line; a series with no positive value is left out and noted in the legend.
/// Throws std::invalid_argument for unknown columns.
std::string render_svg(const Table& table, const PlotSpec& spec);

}  // namespace qkd::cli
