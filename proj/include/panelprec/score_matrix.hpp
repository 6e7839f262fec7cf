#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace panelprec {

/// Candidates x scorers matrix of real-valued scores, stored column-major so
/// each scorer's score vector is contiguous.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  ScoreMatrix(std::size_t candidates, std::size_t scorers, double fill = 0.0);

  /// Builds a matrix from per-scorer columns of equal length.
  static ScoreMatrix from_columns(const std::vector<std::vector<double>>& columns);

  std::size_t candidates() const noexcept { return candidates_; }
  std::size_t scorers() const noexcept { return scorers_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t candidate, std::size_t scorer) {
    return data_[scorer * candidates_ + candidate];
  }
  double operator()(std::size_t candidate, std::size_t scorer) const {
    return data_[scorer * candidates_ + candidate];
  }

  std::span<double> column(std::size_t scorer);
  std::span<const double> column(std::size_t scorer) const;

  /// Per-candidate mean over all scorers.
  std::vector<double> row_means() const;

  /// Per-candidate mean over the given scorers.
  std::vector<double> row_means(std::span<const std::size_t> scorers) const;

  /// Per-candidate weighted sum of scores.
  std::vector<double> weighted_rows(std::span<const double> weights) const;

  std::span<const double> values() const noexcept { return data_; }

  friend bool operator==(const ScoreMatrix&, const ScoreMatrix&) = default;

 private:
  std::size_t candidates_ = 0;
  std::size_t scorers_ = 0;
  std::vector<double> data_;
};

}  // namespace panelprec
