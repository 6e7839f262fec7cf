#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Top-q overlap precision between an estimated score vector x and a
// reference ("true") score vector v over the same m candidates.
//
// Rankings are by descending score; equal scores are ordered by ascending
// candidate index. Selection size for a quantile q is k = max(round(q m), 1)
// with halves rounded away from zero.
namespace panelprec::precision {

struct PrecisionCurve {
  std::vector<double> q_grid;
  std::vector<double> values;
};

/// Descending-score ordering of a score vector, with per-candidate ranks.
class Ranking {
 public:
  explicit Ranking(std::span<const double> scores);

  std::size_t size() const noexcept { return order_.size(); }
  /// order()[r] is the candidate at rank r (0 = best).
  std::span<const std::size_t> order() const noexcept { return order_; }
  std::size_t rank(std::size_t candidate) const { return rank_[candidate]; }

 private:
  std::vector<std::size_t> order_;
  std::vector<std::size_t> rank_;
};

/// |Top(k_a of a) ∩ Top(k_b of b)|.
std::size_t top_overlap(const Ranking& a, std::size_t k_a, const Ranking& b, std::size_t k_b);

/// Selection size for quantile q among m candidates.
std::size_t selection_size(double q, std::size_t m);

/// Indices of the k largest scores, ascending by index.
std::vector<std::size_t> top_set(std::span<const double> scores, std::size_t k);

double precision_at_q(std::span<const double> x, std::span<const double> v, double q);

/// |Top(h, v) ∩ Top(q, x)| / k_h.
double generalized_precision(double h, double q, std::span<const double> x, std::span<const double> v);

/// Geometric grid from 1/m to 1 inclusive.
std::vector<double> log_q_grid(std::size_t m, std::size_t points = 50);

/// Uniform grid {1/points, 2/points, ..., 1}.
std::vector<double> linear_q_grid(std::size_t points = 100);

PrecisionCurve precision_curve(std::span<const double> x, std::span<const double> v,
                               std::span<const double> q_grid);

/// Same as precision_curve with v's ranking already computed.
PrecisionCurve precision_curve(std::span<const double> x, const Ranking& v, std::span<const double> q_grid);

/// Throws DomainError unless the grid is non-empty, strictly increasing, within (0, 1].
void validate_grid(std::span<const double> q_grid);

}  // namespace panelprec::precision
