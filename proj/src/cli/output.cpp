#include "cli/output.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>

#include "panelprec/errors.hpp"

#ifndef PANELPREC_VERSION
#define PANELPREC_VERSION "0.0.0"
#endif

namespace panelprec::cli {

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";  // no "-0"
  return fmt::format("{:.6g}", v);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row() {
  rows_.emplace_back();
  return *this;
}

CsvTable& CsvTable::add(double v) {
  rows_.back().push_back(csv_number(v));
  return *this;
}

CsvTable& CsvTable::add(std::size_t v) {
  rows_.back().push_back(std::to_string(v));
  return *this;
}

CsvTable& CsvTable::add(int v) {
  rows_.back().push_back(std::to_string(v));
  return *this;
}

CsvTable& CsvTable::add(std::string_view text) {
  std::string cell(text);
  if (cell.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (const char c : cell) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    cell = quoted + "\"";
  }
  rows_.back().push_back(std::move(cell));
  return *this;
}

std::string CsvTable::str() const {
  std::string out = fmt::format("{}\n", fmt::join(header_, ","));
  for (const auto& r : rows_) out += fmt::format("{}\n", fmt::join(r, ","));
  return out;
}

void OutputSink::write_text(const std::string& name, const std::string& text) const {
  if (!enabled()) return;
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  out << text;
}

void OutputSink::write_csv(const std::string& name, const CsvTable& table) const {
  if (wants("csv")) write_text(name, table.str());
}

void OutputSink::write_json(const std::string& name, const nlohmann::json& doc) const {
  if (wants("json")) write_text(name, doc.dump(2) + "\n");
}

void OutputSink::write_svg(const std::string& name, const std::string& svg) const {
  if (wants("svg")) write_text(name, svg);
}

void OutputSink::write_run_record(std::string_view command, const nlohmann::json& config) const {
  if (!enabled()) return;
  nlohmann::json doc{{"tool", "panelprec"}, {"version", tool_version()}, {"command", command}, {"config", config}};
  write_text("run.json", doc.dump(2) + "\n");
}

std::string tool_version() { return PANELPREC_VERSION; }

}  // namespace panelprec::cli
