#include "cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "cli/config.hpp"

namespace spinmoment::cli {

namespace {

std::string vector_text(const Eigen::VectorXd& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_number(v(i));
  }
  return out;
}

nlohmann::json number_json(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return std::strtod(format_number(x).c_str(), nullptr);
}

struct CsvCell {
  std::string operator()(const std::string& s) const { return s; }
  std::string operator()(double x) const { return format_number(x); }
  std::string operator()(std::int64_t x) const { return std::to_string(x); }
  std::string operator()(bool b) const { return b ? "true" : "false"; }
  std::string operator()(const std::optional<std::int64_t>& x) const {
    return x ? std::to_string(*x) : "none";
  }
  std::string operator()(const Eigen::VectorXd& v) const { return '"' + vector_text(v) + '"'; }
};

struct JsonCell {
  nlohmann::json operator()(const std::string& s) const { return s; }
  nlohmann::json operator()(double x) const { return number_json(x); }
  nlohmann::json operator()(std::int64_t x) const { return x; }
  nlohmann::json operator()(bool b) const { return b; }
  nlohmann::json operator()(const std::optional<std::int64_t>& x) const {
    return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
  }
  nlohmann::json operator()(const Eigen::VectorXd& v) const {
    auto arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(number_json(v(i)));
    return arr;
  }
};

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string render_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += std::visit(CsvCell{}, row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Table& table, const nlohmann::json& config) {
  nlohmann::ordered_json doc;
  doc["config"] = config;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = std::visit(JsonCell{}, row[c]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  doc["tool_version"] = kToolVersion;
  return doc.dump(2) + "\n";
}

}  // namespace spinmoment::cli
