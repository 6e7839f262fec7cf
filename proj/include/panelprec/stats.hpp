#pragma once

#include <span>
#include <vector>

#include "panelprec/score_matrix.hpp"

// Descriptive statistics shared across modules. Standard deviations and
// variances use the population divisor (n, not n - 1) throughout.
namespace panelprec::stats {

double mean(std::span<const double> x);
double population_variance(std::span<const double> x);
double population_sd(std::span<const double> x);

/// Pearson correlation. Throws DomainError if either input is constant.
double pearson(std::span<const double> x, std::span<const double> y);

/// Full symmetric Pearson matrix (row-major, scorers x scorers) with unit diagonal.
std::vector<double> correlation_matrix(const ScoreMatrix& scores);

/// Mean of all off-diagonal pairwise correlations. Requires >= 2 columns.
double mean_offdiag_correlation(const ScoreMatrix& scores);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of y on x. Throws DomainError when x has no spread.
LinearFit ordinary_least_squares(std::span<const double> x, std::span<const double> y);

/// Two-sided p-value of a Pearson r from n pairs under the null of zero
/// correlation, via t = r sqrt(n-2) / sqrt(1-r^2) with n-2 degrees of freedom.
double pearson_p_value(double r, std::size_t n);

}  // namespace panelprec::stats
