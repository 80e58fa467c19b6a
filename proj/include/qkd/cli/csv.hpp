#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qkd::cli {

/// Numeric table; an absent cell is written as an empty field.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;

  std::size_t column_index(const std::string& name) const;  // throws std::out_of_range
  bool operator==(const Table&) const = default;
};

/// Shortest representation that parses back to the same double.
std::string format_number(double v);

std::string emit_csv(const Table& t);
Table parse_csv(std::string_view text);

void write_csv(const std::string& path, const Table& t);
Table read_csv(const std::string& path);

}  // namespace qkd::cli
