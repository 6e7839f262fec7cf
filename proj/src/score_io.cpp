#include "panelprec/score_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "panelprec/errors.hpp"

namespace panelprec::empirics {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// Splits one CSV record; double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_record(const std::string& line, std::size_t row) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) throw DataError("unterminated quoted field", row);
  fields.push_back(trim(field));
  return fields;
}

double parse_score(const std::string& text, std::size_t row, std::string_view column) {
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw DataError("non-numeric score '" + text + "' in column " + std::string(column), row);
  if (!std::isfinite(value)) throw DataError("non-finite score in column " + std::string(column), row);
  return value;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct TaskBuilder {
  std::string name;
  std::vector<std::string> ids;
  std::vector<std::string> attrs;
  std::vector<std::vector<double>> rows;
};

ScoreTable build(std::vector<std::string> scorers, std::vector<TaskBuilder> builders) {
  ScoreTable table;
  table.scorer_names = std::move(scorers);
  for (auto& b : builders) {
    Task task{std::move(b.name), std::move(b.ids), std::move(b.attrs), ScoreMatrix(b.rows.size(), table.scorer_names.size())};
    for (std::size_t i = 0; i < b.rows.size(); ++i)
      for (std::size_t j = 0; j < b.rows[i].size(); ++j) task.scores(i, j) = b.rows[i][j];
    table.tasks.push_back(std::move(task));
  }
  table.validate();
  return table;
}

}  // namespace

void ScoreTable::validate() const {
  if (tasks.empty()) throw DataError("score table contains no candidates");
  if (scorer_names.size() < 2) throw DataError("score table needs at least two scorer columns");
  for (const auto& t : tasks) {
    if (t.scores.scorers() != scorer_names.size()) throw DataError("task '" + t.name + "' has the wrong scorer count");
    if (t.candidate_ids.size() != t.scores.candidates() || t.attrs.size() != t.scores.candidates())
      throw DataError("task '" + t.name + "' has mismatched candidate metadata");
    if (t.scores.candidates() == 0) throw DataError("task '" + t.name + "' has no candidates");
    for (const double v : t.scores.values())
      if (!std::isfinite(v)) throw DataError("task '" + t.name + "' contains a non-finite score");
  }
}

TableFormat format_for(const std::filesystem::path& path, std::string_view requested) {
  std::string key(requested);
  if (key.empty()) {
    key = path.extension().string();
    if (!key.empty() && key.front() == '.') key.erase(0, 1);
  }
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
  if (key == "csv") return TableFormat::Csv;
  if (key == "json") return TableFormat::Json;
  throw ConfigError("unknown score table format: " + (key.empty() ? path.string() : key));
}

ScoreTable read_scores_csv(std::istream& in) {
  std::string line;
  std::size_t row = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++row;
    if (!trim(line).empty()) {
      header = split_record(line, row);
      break;
    }
  }
  if (header.empty()) throw DataError("empty input");
  if (header.size() < 5 || header[0] != "task" || header[1] != "candidate_id" || header[2] != "attr")
    throw DataError("header must be task,candidate_id,attr followed by at least two scorer columns", row);
  std::vector<std::string> scorers(header.begin() + 3, header.end());

  std::vector<TaskBuilder> builders;
  std::map<std::string, std::size_t> index;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto fields = split_record(line, row);
    if (fields.size() != header.size())
      throw DataError("expected " + std::to_string(header.size()) + " fields, found " + std::to_string(fields.size()), row);
    if (fields[0].empty()) throw DataError("missing task name", row);
    auto [it, inserted] = index.try_emplace(fields[0], builders.size());
    if (inserted) builders.push_back({fields[0], {}, {}, {}});
    auto& b = builders[it->second];
    b.ids.push_back(fields[1]);
    b.attrs.push_back(fields[2]);
    std::vector<double> scores;
    for (std::size_t j = 3; j < fields.size(); ++j) scores.push_back(parse_score(fields[j], row, header[j]));
    b.rows.push_back(std::move(scores));
  }
  if (builders.empty()) throw DataError("no data rows");
  return build(std::move(scorers), std::move(builders));
}

ScoreTable read_scores_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("malformed JSON: ") + e.what());
  }
  try {
    std::vector<std::string> scorers = doc.at("scorers").get<std::vector<std::string>>();
    std::vector<TaskBuilder> builders;
    std::size_t record = 0;
    for (const auto& task : doc.at("tasks")) {
      TaskBuilder b{task.at("name").get<std::string>(), {}, {}, {}};
      for (const auto& cand : task.at("candidates")) {
        ++record;
        b.ids.push_back(cand.at("id").get<std::string>());
        b.attrs.push_back(cand.value("attr", std::string{}));
        auto scores = cand.at("scores").get<std::vector<double>>();
        if (scores.size() != scorers.size())
          throw DataError("candidate '" + b.ids.back() + "' has " + std::to_string(scores.size()) + " scores, expected " +
                              std::to_string(scorers.size()),
                          record);
        b.rows.push_back(std::move(scores));
      }
      builders.push_back(std::move(b));
    }
    return build(std::move(scorers), std::move(builders));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid score document: ") + e.what());
  }
}

ScoreTable load_scores(const std::filesystem::path& path, TableFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return format == TableFormat::Csv ? read_scores_csv(in) : read_scores_json(in);
}

void write_scores_csv(const ScoreTable& table, std::ostream& out) {
  out << "task,candidate_id,attr";
  for (const auto& s : table.scorer_names) out << ',' << quote_if_needed(s);
  out << '\n';
  for (const auto& t : table.tasks) {
    for (std::size_t i = 0; i < t.scores.candidates(); ++i) {
      out << quote_if_needed(t.name) << ',' << quote_if_needed(t.candidate_ids[i]) << ',' << quote_if_needed(t.attrs[i]);
      for (std::size_t j = 0; j < t.scores.scorers(); ++j) out << ',' << shortest(t.scores(i, j));
      out << '\n';
    }
  }
}

void write_scores_json(const ScoreTable& table, std::ostream& out) {
  nlohmann::json doc;
  doc["scorers"] = table.scorer_names;
  doc["tasks"] = nlohmann::json::array();
  for (const auto& t : table.tasks) {
    nlohmann::json task{{"name", t.name}, {"candidates", nlohmann::json::array()}};
    for (std::size_t i = 0; i < t.scores.candidates(); ++i) {
      std::vector<double> scores(t.scores.scorers());
      for (std::size_t j = 0; j < scores.size(); ++j) scores[j] = t.scores(i, j);
      task["candidates"].push_back({{"id", t.candidate_ids[i]}, {"attr", t.attrs[i]}, {"scores", scores}});
    }
    doc["tasks"].push_back(std::move(task));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace panelprec::empirics
