#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace symlat {

using Cell = std::variant<std::int64_t, double, std::string>;

struct ExperimentRecord {
  std::string id;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> aggregates;
  double wall_clock_seconds = 0.0;  // informational; never serialized

  void add_parameter(const std::string& key, const std::string& value) { parameters.emplace_back(key, value); }
  void add_aggregate(const std::string& key, Cell value) { aggregates.emplace_back(key, std::move(value)); }
  const Cell* aggregate(const std::string& key) const;
  double aggregate_double(const std::string& key) const;
};

inline constexpr const char* format_version = "symlat-csv/1";

std::string format_double(double x);
std::string format_cell(const Cell& c);

std::string csv_text(const ExperimentRecord& r);
std::string manifest_text(const ExperimentRecord& r, const std::string& config_echo = "");

// Writes the CSV to path and the manifest to path with extension ".manifest".
void emit_csv(const ExperimentRecord& r, const std::filesystem::path& path, const std::string& config_echo = "");

std::filesystem::path manifest_path(const std::filesystem::path& csv_path);

}  // namespace symlat
