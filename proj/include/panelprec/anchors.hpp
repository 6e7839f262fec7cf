#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "panelprec/random.hpp"

// Limiting single-scorer precision at the extreme quantile q = 1/m.
namespace panelprec::anchors {

struct AnchorSet {
  double q_anchor = 0.0;             ///< 1/m
  double normal_limit = 0.0;         ///< exact, jointly normal signal and score
  double t_limit = 0.0;              ///< simulated, Student-t signal
  double heavy_tail_estimate = 0.0;  ///< log-linear interpolation
  double p_avg_02 = 0.0;             ///< average simulated P(0.2) the estimates hang from
};

/// P(1/m) for jointly normal signal and score at correlation rho:
/// P(X > z, Y > z) / q with q = 1/m and z the upper-q normal quantile.
/// rho = 1 returns 1.
double normal_limit_anchor(std::size_t m, double rho);

/// Fraction of simulated batches of m candidates in which the highest
/// observed score (Student-t signal plus sample-sd calibrated normal noise)
/// belongs to the candidate with the highest signal. Each trial draws from
/// its own substream, so the result depends only on (stream, trials).
double student_t_anchor(std::size_t m, double rho, double dof, std::size_t trials, const rng::Stream& stream,
                        unsigned threads = 1);

/// Value at q = 1/m of the line in log10(q) through (1/(10m), 1) and (0.2, p_avg_02).
double heavy_tail_anchor(std::size_t m, double p_avg_02);

/// Line through (1, 1) and (0.2, p_avg_02), evaluated on the grid.
std::vector<double> reference_line(std::span<const double> q_grid, double p_avg_02);

AnchorSet compute_anchors(std::size_t m, double rho, double p_avg_02, double t_dof, std::size_t t_trials,
                          const rng::Stream& stream, unsigned threads = 1);

}  // namespace panelprec::anchors
