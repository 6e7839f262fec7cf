#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "panelprec/score_matrix.hpp"

namespace panelprec::empirics {

/// One scoring task (e.g. one company's vacancy): m candidates scored by the
/// same n scorers.
struct Task {
  std::string name;
  std::vector<std::string> candidate_ids;
  std::vector<std::string> attrs;  ///< optional group label per candidate; "" when absent
  ScoreMatrix scores;              ///< candidates x scorers

  friend bool operator==(const Task&, const Task&) = default;
};

struct ScoreTable {
  std::vector<std::string> scorer_names;
  std::vector<Task> tasks;

  /// Throws DataError unless every task is rectangular with finite scores and
  /// at least two scorers.
  void validate() const;

  friend bool operator==(const ScoreTable&, const ScoreTable&) = default;
};

enum class TableFormat { Csv, Json };

/// "csv" or "json"; otherwise inferred from the file extension.
TableFormat format_for(const std::filesystem::path& path, std::string_view requested = "");

/// CSV header: task,candidate_id,attr,<scorer_1>,...,<scorer_n>; one row per
/// (task, candidate). Tasks keep their order of first appearance.
ScoreTable read_scores_csv(std::istream& in);
ScoreTable read_scores_json(std::istream& in);
ScoreTable load_scores(const std::filesystem::path& path, TableFormat format);

void write_scores_csv(const ScoreTable& table, std::ostream& out);
void write_scores_json(const ScoreTable& table, std::ostream& out);

}  // namespace panelprec::empirics
