#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "panelprec/anchors.hpp"
#include "panelprec/random.hpp"

namespace panelprec::montecarlo {

struct SingleCurveConfig {
  std::size_t m = 2000;
  double rho = 0.8;
  std::size_t trials = 2000;
  double t_dof = 4.0;
  double pareto_shape = 3.0;
  std::size_t grid_points = 50;
  std::size_t anchor_trials = 50000;
  std::vector<rng::SignalKind> kinds = {rng::SignalKind::Normal, rng::SignalKind::Pareto,
                                        rng::SignalKind::LogNormal, rng::SignalKind::StudentT};
};

struct SingleCurves {
  std::vector<double> q_grid;
  std::vector<rng::SignalKind> kinds;
  std::vector<std::vector<double>> curves;  ///< one per kind, aligned with q_grid
  std::size_t index_02 = 0;                 ///< grid index nearest q = 0.2
  double p_avg_02 = 0.0;                    ///< mean over kinds of the curve at index_02
  std::vector<double> reference;            ///< reference_line(q_grid, p_avg_02)
  anchors::AnchorSet anchors;
};

/// Average single-scorer precision curves P1(q) on log_q_grid(m) for each
/// signal distribution, signal plus calibrated normal noise at correlation
/// rho. Trial t of kind d draws from stream(seed, 0).substream(t * kinds + d);
/// anchors use stream(seed, 1).
SingleCurves simulate_single_curves(const SingleCurveConfig& cfg, std::uint64_t seed, unsigned threads = 1);

/// Simulated P1(q) at a single quantile for one distribution.
double simulate_single_precision(const rng::DistributionSpec& dist, std::size_t m, double rho, double q,
                                 std::size_t trials, std::uint64_t seed, unsigned threads = 1);

}  // namespace panelprec::montecarlo
