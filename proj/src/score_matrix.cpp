#include "panelprec/score_matrix.hpp"

#include <algorithm>

#include "panelprec/errors.hpp"

namespace panelprec {

ScoreMatrix::ScoreMatrix(std::size_t candidates, std::size_t scorers, double fill)
    : candidates_(candidates), scorers_(scorers), data_(candidates * scorers, fill) {}

ScoreMatrix ScoreMatrix::from_columns(const std::vector<std::vector<double>>& columns) {
  if (columns.empty()) return {};
  const std::size_t m = columns.front().size();
  ScoreMatrix out(m, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != m) throw DomainError("ScoreMatrix: ragged columns");
    std::copy(columns[j].begin(), columns[j].end(), out.column(j).begin());
  }
  return out;
}

std::span<double> ScoreMatrix::column(std::size_t scorer) {
  return {data_.data() + scorer * candidates_, candidates_};
}

std::span<const double> ScoreMatrix::column(std::size_t scorer) const {
  return {data_.data() + scorer * candidates_, candidates_};
}

std::vector<double> ScoreMatrix::row_means() const {
  std::vector<double> out(candidates_, 0.0);
  for (std::size_t j = 0; j < scorers_; ++j) {
    const auto col = column(j);
    for (std::size_t i = 0; i < candidates_; ++i) out[i] += col[i];
  }
  for (auto& v : out) v /= static_cast<double>(scorers_);
  return out;
}

std::vector<double> ScoreMatrix::row_means(std::span<const std::size_t> scorers) const {
  std::vector<double> out(candidates_, 0.0);
  for (const auto j : scorers) {
    const auto col = column(j);
    for (std::size_t i = 0; i < candidates_; ++i) out[i] += col[i];
  }
  const auto k = static_cast<double>(scorers.size());
  for (auto& v : out) v /= k;
  return out;
}

std::vector<double> ScoreMatrix::weighted_rows(std::span<const double> weights) const {
  if (weights.size() != scorers_) throw DomainError("weighted_rows: weight count mismatch");
  std::vector<double> out(candidates_, 0.0);
  for (std::size_t j = 0; j < scorers_; ++j) {
    const auto col = column(j);
    for (std::size_t i = 0; i < candidates_; ++i) out[i] += weights[j] * col[i];
  }
  return out;
}

}  // namespace panelprec
