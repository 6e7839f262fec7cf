#include "panelprec/anchors.hpp"

#include <algorithm>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/student_t_distribution.hpp>
#include <cmath>

#include "panelprec/errors.hpp"
#include "panelprec/normal.hpp"
#include "panelprec/parallel.hpp"
#include "panelprec/stats.hpp"

namespace panelprec::anchors {
namespace {

constexpr std::size_t kTrialsPerBlock = 256;

bool winner_is_true_top(std::size_t m, double rho, double dof, rng::Stream& stream, std::vector<double>& nu) {
  boost::random::student_t_distribution<double> t(dof);
  for (std::size_t i = 0; i < m; ++i) nu[i] = t(stream);
  const double sd = stats::population_sd(nu);
  const double noise_sd = sd * std::sqrt(1.0 / (rho * rho) - 1.0);
  boost::random::normal_distribution<double> normal;
  std::size_t winner = 0;
  double best = -INFINITY;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = nu[i] + noise_sd * normal(stream);
    if (x > best) {
      best = x;
      winner = i;
    }
  }
  return nu[winner] >= *std::max_element(nu.begin(), nu.end());
}

}  // namespace

double normal_limit_anchor(std::size_t m, double rho) {
  if (m < 2) throw DomainError("normal_limit_anchor: m must be >= 2");
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("normal_limit_anchor: rho must lie in [0, 1]");
  if (rho == 1.0) return 1.0;
  const double q = 1.0 / static_cast<double>(m);
  const double z = normal::quantile(1.0 - q);
  // Equal to (1 - 2(1 - q) + Phi2(z, z; rho)) / q, evaluated on the upper
  // orthant to avoid cancellation.
  return std::clamp(normal::bivariate_upper(z, z, rho) / q, 0.0, 1.0);
}

double student_t_anchor(std::size_t m, double rho, double dof, std::size_t trials, const rng::Stream& stream,
                        unsigned threads) {
  if (m < 2) throw DomainError("student_t_anchor: m must be >= 2");
  if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("student_t_anchor: rho must lie in (0, 1]");
  if (!(dof > 2.0)) throw DomainError("student_t_anchor: dof must exceed 2");
  if (trials == 0) throw DomainError("student_t_anchor: need at least one trial");
  if (rho == 1.0) return 1.0;

  const std::size_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<std::size_t> hits(blocks, 0);
  parallel_for(blocks, threads, [&](std::size_t b) {
    std::vector<double> nu(m);
    const std::size_t end = std::min(trials, (b + 1) * kTrialsPerBlock);
    for (std::size_t t = b * kTrialsPerBlock; t < end; ++t) {
      rng::Stream trial_stream = stream.substream(t);
      hits[b] += winner_is_true_top(m, rho, dof, trial_stream, nu) ? 1 : 0;
    }
  });
  std::size_t total = 0;
  for (const auto h : hits) total += h;
  return static_cast<double>(total) / static_cast<double>(trials);
}

double heavy_tail_anchor(std::size_t m, double p_avg_02) {
  if (m < 2) throw DomainError("heavy_tail_anchor: m must be >= 2");
  if (!(p_avg_02 >= 0.0 && p_avg_02 <= 1.0)) throw DomainError("heavy_tail_anchor: p_avg_02 must lie in [0, 1]");
  const double md = static_cast<double>(m);
  const double log_start = std::log10(1.0 / (10.0 * md));
  const double log_end = std::log10(0.2);
  const double log_target = std::log10(1.0 / md);
  const double fraction = (log_target - log_start) / (log_end - log_start);
  return 1.0 - fraction * (1.0 - p_avg_02);
}

std::vector<double> reference_line(std::span<const double> q_grid, double p_avg_02) {
  const double slope = (1.0 - p_avg_02) / 0.8;
  std::vector<double> out(q_grid.size());
  std::transform(q_grid.begin(), q_grid.end(), out.begin(), [&](double q) { return 1.0 + slope * (q - 1.0); });
  return out;
}

AnchorSet compute_anchors(std::size_t m, double rho, double p_avg_02, double t_dof, std::size_t t_trials,
                          const rng::Stream& stream, unsigned threads) {
  AnchorSet out;
  out.q_anchor = 1.0 / static_cast<double>(m);
  out.normal_limit = normal_limit_anchor(m, rho);
  out.t_limit = student_t_anchor(m, rho, t_dof, t_trials, stream, threads);
  out.heavy_tail_estimate = heavy_tail_anchor(m, p_avg_02);
  out.p_avg_02 = p_avg_02;
  return out;
}

}  // namespace panelprec::anchors
