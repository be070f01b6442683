#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace spinmoment::cli {

/// Empty optional renders as "none" in CSV and null in JSON.
using Cell = std::variant<std::string, double, std::int64_t, bool, std::optional<std::int64_t>,
                          Eigen::VectorXd>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// %.12g; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double x);

std::string render_csv(const Table& table);
/// {config, rows, tool_version}; each row is an object keyed by column name.
/// Numbers are the CSV's 12-digit values; NaN is null and infinities are the
/// strings "inf" / "-inf".
std::string render_json(const Table& table, const nlohmann::json& config);

}  // namespace spinmoment::cli
