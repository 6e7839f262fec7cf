#include "panelprec/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "panelprec/errors.hpp"

namespace panelprec::stats {

double mean(std::span<const double> x) {
  if (x.empty()) throw DomainError("mean of empty sequence");
  double sum = 0.0;
  for (const double v : x) sum += v;
  return sum / static_cast<double>(x.size());
}

double population_variance(std::span<const double> x) {
  const double mu = mean(x);
  double ss = 0.0;
  for (const double v : x) ss += (v - mu) * (v - mu);
  return ss / static_cast<double>(x.size());
}

double population_sd(std::span<const double> x) { return std::sqrt(population_variance(x)); }

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("pearson: length mismatch");
  if (x.size() < 2) throw DomainError("pearson: need at least two points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) throw DomainError("pearson: constant input");
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

std::vector<double> correlation_matrix(const ScoreMatrix& scores) {
  const std::size_t n = scores.scorers();
  std::vector<double> out(n * n, 1.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double r = pearson(scores.column(a), scores.column(b));
      out[a * n + b] = r;
      out[b * n + a] = r;
    }
  }
  return out;
}

double mean_offdiag_correlation(const ScoreMatrix& scores) {
  const std::size_t n = scores.scorers();
  if (n < 2) throw DomainError("mean_offdiag_correlation: need at least two columns");
  const auto corr = correlation_matrix(scores);
  double sum = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) sum += corr[a * n + b];
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

LinearFit ordinary_least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("ols: length mismatch");
  if (x.size() < 2) throw DomainError("ols: need at least two points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  // Relative spread guard: identical abscissae (up to rounding) give no slope.
  if (sxx <= 1e-24 * (1.0 + mx * mx) * static_cast<double>(x.size()))
    throw DomainError("ols: degenerate spread in the regressor");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

double pearson_p_value(double r, std::size_t n) {
  if (n < 3) throw DomainError("pearson_p_value: need at least three pairs");
  if (!(r >= -1.0 && r <= 1.0)) throw DomainError("pearson_p_value: r outside [-1, 1]");
  if (std::abs(r) == 1.0) return 0.0;
  const double dof = static_cast<double>(n - 2);
  const double t = std::abs(r) * std::sqrt(dof) / std::sqrt(1.0 - r * r);
  const boost::math::students_t dist(dof);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, t)));
}

}  // namespace panelprec::stats
