#include "panelprec/single_curves.hpp"

#include <algorithm>
#include <cmath>

#include "panelprec/errors.hpp"
#include "panelprec/parallel.hpp"
#include "panelprec/precision.hpp"

namespace panelprec::montecarlo {
namespace {

constexpr std::size_t kTrialsPerBlock = 32;

// Sum of per-trial curves, accumulated in a fixed block order.
std::vector<std::vector<double>> accumulate_curves(const SingleCurveConfig& cfg, std::span<const double> grid,
                                                   const rng::Stream& base, unsigned threads) {
  const std::size_t kinds = cfg.kinds.size();
  const std::size_t blocks = (cfg.trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<std::vector<double>> partial(blocks * kinds, std::vector<double>(grid.size(), 0.0));

  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::size_t end = std::min(cfg.trials, (b + 1) * kTrialsPerBlock);
    for (std::size_t t = b * kTrialsPerBlock; t < end; ++t) {
      for (std::size_t d = 0; d < kinds; ++d) {
        rng::Stream stream = base.substream(t * kinds + d);
        const rng::DistributionSpec spec{cfg.kinds[d], cfg.pareto_shape, cfg.t_dof};
        const auto nu = rng::sample_signal(spec, cfg.m, stream);
        const auto x = rng::add_calibrated_noise(nu, cfg.rho, stream);
        const auto curve = precision::precision_curve(x, nu, grid);
        auto& acc = partial[b * kinds + d];
        for (std::size_t i = 0; i < grid.size(); ++i) acc[i] += curve.values[i];
      }
    }
  });

  std::vector<std::vector<double>> sums(kinds, std::vector<double>(grid.size(), 0.0));
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t d = 0; d < kinds; ++d)
      for (std::size_t i = 0; i < grid.size(); ++i) sums[d][i] += partial[b * kinds + d][i];
  return sums;
}

}  // namespace

SingleCurves simulate_single_curves(const SingleCurveConfig& cfg, std::uint64_t seed, unsigned threads) {
  if (cfg.m < 2) throw DomainError("single curves: m must be >= 2");
  if (cfg.trials == 0) throw DomainError("single curves: need at least one trial");
  if (!(cfg.rho > 0.0 && cfg.rho <= 1.0)) throw DomainError("single curves: rho must lie in (0, 1]");
  if (cfg.kinds.empty()) throw DomainError("single curves: no distributions requested");

  SingleCurves out;
  out.q_grid = precision::log_q_grid(cfg.m, cfg.grid_points);
  out.kinds = cfg.kinds;
  out.curves = accumulate_curves(cfg, out.q_grid, rng::Stream(seed, 0), threads);
  for (auto& curve : out.curves)
    for (auto& v : curve) v /= static_cast<double>(cfg.trials);

  const auto nearest = std::min_element(out.q_grid.begin(), out.q_grid.end(), [](double a, double b) {
    return std::abs(a - 0.2) < std::abs(b - 0.2);
  });
  out.index_02 = static_cast<std::size_t>(nearest - out.q_grid.begin());
  double sum = 0.0;
  for (const auto& curve : out.curves) sum += curve[out.index_02];
  out.p_avg_02 = sum / static_cast<double>(out.curves.size());
  out.reference = anchors::reference_line(out.q_grid, out.p_avg_02);
  out.anchors =
      anchors::compute_anchors(cfg.m, cfg.rho, out.p_avg_02, cfg.t_dof, cfg.anchor_trials, rng::Stream(seed, 1), threads);
  return out;
}

double simulate_single_precision(const rng::DistributionSpec& dist, std::size_t m, double rho, double q,
                                 std::size_t trials, std::uint64_t seed, unsigned threads) {
  SingleCurveConfig cfg;
  cfg.m = m;
  cfg.rho = rho;
  cfg.trials = trials;
  cfg.t_dof = dist.t_dof;
  cfg.pareto_shape = dist.pareto_shape;
  cfg.kinds = {dist.kind};
  const std::vector<double> grid{q};
  const auto sums = accumulate_curves(cfg, grid, rng::Stream(seed, 0), threads);
  return sums[0][0] / static_cast<double>(trials);
}

}  // namespace panelprec::montecarlo
