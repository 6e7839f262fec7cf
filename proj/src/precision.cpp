#include "panelprec/precision.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "panelprec/errors.hpp"

namespace panelprec::precision {
namespace {

void check_lengths(std::span<const double> x, std::span<const double> v) {
  if (x.size() != v.size()) throw DomainError("precision: score vectors differ in length");
  if (x.empty()) throw DomainError("precision: empty score vectors");
}

void check_quantile(double q) {
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("precision: quantile must lie in (0, 1]");
}

}  // namespace

Ranking::Ranking(std::span<const double> scores) : order_(scores.size()), rank_(scores.size()) {
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
  });
  for (std::size_t r = 0; r < order_.size(); ++r) rank_[order_[r]] = r;
}

std::size_t top_overlap(const Ranking& a, std::size_t k_a, const Ranking& b, std::size_t k_b) {
  std::size_t hits = 0;
  for (std::size_t r = 0; r < k_a; ++r) hits += b.rank(a.order()[r]) < k_b ? 1 : 0;
  return hits;
}

std::size_t selection_size(double q, std::size_t m) {
  check_quantile(q);
  const auto k = static_cast<std::size_t>(std::round(q * static_cast<double>(m)));
  return std::clamp<std::size_t>(k, 1, m);
}

std::vector<std::size_t> top_set(std::span<const double> scores, std::size_t k) {
  if (k < 1 || k > scores.size()) throw DomainError("top_set: k out of range");
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k - 1), idx.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
                   });
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

double precision_at_q(std::span<const double> x, std::span<const double> v, double q) {
  check_lengths(x, v);
  const std::size_t k = selection_size(q, x.size());
  const Ranking rx(x), rv(v);
  return static_cast<double>(top_overlap(rx, k, rv, k)) / static_cast<double>(k);
}

double generalized_precision(double h, double q, std::span<const double> x, std::span<const double> v) {
  check_lengths(x, v);
  const std::size_t k_h = selection_size(h, x.size());
  const std::size_t k_q = selection_size(q, x.size());
  const Ranking rx(x), rv(v);
  return static_cast<double>(top_overlap(rv, k_h, rx, k_q)) / static_cast<double>(k_h);
}

std::vector<double> log_q_grid(std::size_t m, std::size_t points) {
  if (m < 2) throw DomainError("log_q_grid: m must be >= 2");
  if (points < 2) throw DomainError("log_q_grid: need at least two points");
  const double lo = std::log10(1.0 / static_cast<double>(m));
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    grid[i] = std::pow(10.0, lo * (1.0 - t));
  }
  grid.front() = 1.0 / static_cast<double>(m);
  grid.back() = 1.0;
  return grid;
}

std::vector<double> linear_q_grid(std::size_t points) {
  if (points < 1) throw DomainError("linear_q_grid: need at least one point");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = static_cast<double>(i + 1) / static_cast<double>(points);
  return grid;
}

void validate_grid(std::span<const double> q_grid) {
  if (q_grid.empty()) throw DomainError("q grid is empty");
  for (std::size_t i = 0; i < q_grid.size(); ++i) {
    check_quantile(q_grid[i]);
    if (i > 0 && !(q_grid[i] > q_grid[i - 1])) throw DomainError("q grid must be strictly increasing");
  }
}

PrecisionCurve precision_curve(std::span<const double> x, const Ranking& v, std::span<const double> q_grid) {
  if (x.size() != v.size() || x.empty()) throw DomainError("precision_curve: length mismatch");
  validate_grid(q_grid);
  const Ranking rx(x);
  PrecisionCurve curve{{q_grid.begin(), q_grid.end()}, std::vector<double>(q_grid.size())};
  for (std::size_t i = 0; i < q_grid.size(); ++i) {
    const std::size_t k = selection_size(q_grid[i], x.size());
    curve.values[i] = static_cast<double>(top_overlap(rx, k, v, k)) / static_cast<double>(k);
  }
  return curve;
}

PrecisionCurve precision_curve(std::span<const double> x, std::span<const double> v,
                               std::span<const double> q_grid) {
  check_lengths(x, v);
  return precision_curve(x, Ranking(v), q_grid);
}

}  // namespace panelprec::precision
