#include "symlat/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "symlat/error.hpp"

namespace symlat {

const Cell* ExperimentRecord::aggregate(const std::string& key) const {
  for (const auto& [k, v] : aggregates)
    if (k == key) return &v;
  return nullptr;
}

double ExperimentRecord::aggregate_double(const std::string& key) const {
  const Cell* c = aggregate(key);
  require(c != nullptr, "experiment record: no aggregate '" + key + "'");
  if (const auto* d = std::get_if<double>(c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(c)) return static_cast<double>(*i);
  throw InputError("experiment record: aggregate '" + key + "' is not numeric");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return quote(std::get<std::string>(c));
}

std::string csv_text(const ExperimentRecord& r) {
  std::ostringstream os;
  for (std::size_t j = 0; j < r.columns.size(); ++j) os << (j ? "," : "") << quote(r.columns[j]);
  os << '\n';
  for (const auto& row : r.rows) {
    require(row.size() == r.columns.size(), "experiment record: row width does not match header");
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_cell(row[j]);
    os << '\n';
  }
  return os.str();
}

std::string manifest_text(const ExperimentRecord& r, const std::string& config_echo) {
  std::ostringstream os;
  os << "format_version=" << format_version << '\n';
  os << "experiment=" << r.id << '\n';
  os << "rows=" << r.rows.size() << '\n';
  os << "\n[parameters]\n";
  for (const auto& [k, v] : r.parameters) os << k << '=' << v << '\n';
  os << "\n[aggregates]\n";
  for (const auto& [k, v] : r.aggregates) os << k << '=' << format_cell(v) << '\n';
  if (!config_echo.empty()) {
    os << "\n[config]\n" << config_echo;
    if (config_echo.back() != '\n') os << '\n';
  }
  return os.str();
}

std::filesystem::path manifest_path(const std::filesystem::path& csv_path) {
  std::filesystem::path p = csv_path;
  p.replace_extension(".manifest");
  return p;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace

void emit_csv(const ExperimentRecord& r, const std::filesystem::path& path, const std::string& config_echo) {
  write_file(path, csv_text(r));
  write_file(manifest_path(path), manifest_text(r, config_echo));
}

}  // namespace symlat
