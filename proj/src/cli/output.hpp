#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace panelprec::cli {

/// Number rendered with 6 significant digits, the CSV convention.
std::string csv_number(double v);

/// Minimal CSV table builder; cells are stored pre-formatted.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& row();
  CsvTable& add(double v);
  CsvTable& add(std::size_t v);
  CsvTable& add(int v);
  CsvTable& add(std::string_view text);

  std::string str() const;
  std::size_t rows() const noexcept { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Where and what to write. An empty directory means nothing is written.
struct OutputSink {
  std::filesystem::path dir;
  std::set<std::string> formats{"csv", "json"};

  bool enabled() const { return !dir.empty(); }
  bool wants(std::string_view format) const { return enabled() && formats.count(std::string(format)) > 0; }

  void write_text(const std::string& name, const std::string& text) const;
  void write_csv(const std::string& name, const CsvTable& table) const;
  void write_json(const std::string& name, const nlohmann::json& doc) const;
  void write_svg(const std::string& name, const std::string& svg) const;
  /// run.json: tool name, version, command and resolved configuration.
  void write_run_record(std::string_view command, const nlohmann::json& config) const;
};

std::string tool_version();

}  // namespace panelprec::cli
