#include "panelprec/montecarlo.hpp"

#include <algorithm>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "panelprec/errors.hpp"
#include "panelprec/minimize.hpp"
#include "panelprec/parallel.hpp"
#include "panelprec/precision.hpp"
#include "panelprec/stats.hpp"

namespace panelprec::montecarlo {

void UniverseConfig::validate() const {
  if (n_ais < 2) throw ConfigError("universe: n_ais must be >= 2");
  if (m_candidates < 2) throw ConfigError("universe: m_candidates must be >= 2");
  if (!(target_rho > 0.0 && target_rho < 1.0)) throw ConfigError("universe: target_rho must lie in (0, 1)");
  if (!(scale_min < scale_max)) throw ConfigError("universe: scale_min must be below scale_max");
  if (!(scale_min > 0.0)) throw ConfigError("universe: scale_min must be positive");
  if (!(sig_rho >= 0.0 && scale_sd >= 0.0)) throw ConfigError("universe: standard deviations must be >= 0");
  if (!(rho_sig_corr >= -1.0 && rho_sig_corr <= 1.0)) throw ConfigError("universe: rho_sig_corr must lie in [-1, 1]");
  tail.validate();
}

Preset parse_preset(std::string_view name) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
  if (key == "paper") return Preset::Paper;
  if (key == "desk") return Preset::Desk;
  throw ConfigError("unknown preset: " + std::string(name));
}

std::string_view to_string(Preset preset) { return preset == Preset::Paper ? "paper" : "desk"; }

ScanSettings preset_settings(Preset preset) {
  ScanSettings s;
  if (preset == Preset::Desk) {
    s.universe.n_ais = 40;
    s.universe.m_candidates = 1000;
    s.samples_per_size = 800;
  }
  return s;
}

Universe generate_universe(const UniverseConfig& cfg, rng::Stream& stream) {
  cfg.validate();
  const std::size_t n = cfg.n_ais;
  const std::size_t m = cfg.m_candidates;

  // (r_i, s_i) ~ bivariate normal; Cholesky factor of the 2x2 covariance.
  const double var_r = cfg.sig_rho * cfg.sig_rho;
  const double var_s = cfg.scale_sd * cfg.scale_sd;
  const double cov = cfg.rho_sig_corr * cfg.sig_rho * cfg.scale_sd;
  const double l11 = std::sqrt(var_r);
  double l21 = 0.0;
  double l22 = std::sqrt(var_s);
  if (l11 > 0.0) {
    l21 = cov / l11;
    const double rem = var_s - l21 * l21;
    if (rem < -1e-12 * std::max(var_s, 1.0)) throw ConfigError("universe: parameter covariance is not positive semidefinite");
    l22 = std::sqrt(std::max(rem, 0.0));
  }
  const double mean_s = 0.5 * (cfg.scale_min + cfg.scale_max);

  boost::random::normal_distribution<double> normal;
  Universe u;
  u.loadings.resize(n);
  u.scales.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double e1 = normal(stream);
    const double e2 = normal(stream);
    u.loadings[i] = std::clamp(cfg.target_rho + l11 * e1, 0.01, 0.999);
    u.scales[i] = std::clamp(mean_s + l21 * e1 + l22 * e2, cfg.scale_min, cfg.scale_max);
  }

  std::vector<double> common(m);
  for (auto& z : common) z = normal(stream);

  u.scores = ScoreMatrix(m, n);
  std::vector<double> column(m);
  for (std::size_t i = 0; i < n; ++i) {
    const double loading = std::sqrt(u.loadings[i]);
    const double specific = std::sqrt(1.0 - u.loadings[i]);
    for (std::size_t j = 0; j < m; ++j) column[j] = loading * common[j] + specific * normal(stream);
    const auto skewed = rng::superstar_transform(column, cfg.tail);
    const auto z = rng::standardize(skewed);
    auto out = u.scores.column(i);
    for (std::size_t j = 0; j < m; ++j) out[j] = z[j] * u.scales[i] + cfg.t_mean;
  }
  u.y_true = u.scores.row_means();
  u.measured_rho = stats::mean_offdiag_correlation(u.scores);
  return u;
}

double panel_law(double k, double rho, double b, double q) {
  const double kb = std::pow(k, std::max(b, 0.001));
  return (kb * rho + q * (1.0 - rho)) / (1.0 + (kb - 1.0) * rho);
}

double fit_exponent_b(std::span<const int> sizes, std::span<const double> precisions, double rho, double q) {
  if (sizes.size() != precisions.size() || sizes.empty())
    throw DomainError("fit_exponent_b: sizes and precisions must be aligned and non-empty");
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("fit_exponent_b: rho must lie in (0, 1)");
  auto objective = [&](double b) {
    double ss = 0.0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const double r = precisions[i] - panel_law(sizes[i], rho, b, q);
      ss += r * r;
    }
    return ss;
  };
  return optimize::minimize_bounded(objective, kExponentLow, kExponentHigh, kExponentTolerance).x;
}

PanelScanResult panel_precision_scan(const Universe& u, double q, std::span<const int> sizes,
                                     std::size_t samples_per_size, rng::Stream& stream) {
  const std::size_t n = u.scores.scorers();
  const std::size_t m = u.scores.candidates();
  if (samples_per_size == 0) throw DomainError("panel_precision_scan: samples_per_size must be positive");
  for (const int k : sizes)
    if (k < 1 || static_cast<std::size_t>(k) > n) throw DomainError("panel_precision_scan: panel size out of range");

  const std::size_t k_sel = precision::selection_size(q, m);
  const precision::Ranking truth(u.y_true);

  PanelScanResult result;
  result.q = q;
  result.panel_sizes.assign(sizes.begin(), sizes.end());
  result.samples_per_size = samples_per_size;
  result.measured_rho = u.measured_rho;

  std::vector<std::size_t> pool(n);
  std::vector<std::size_t> candidates(m);
  std::vector<double> est(m);
  const auto by_estimate = [&](std::size_t a, std::size_t b) {
    return est[a] > est[b] || (est[a] == est[b] && a < b);
  };

  for (const int k : sizes) {
    double total = 0.0;
    for (std::size_t s = 0; s < samples_per_size; ++s) {
      // Partial Fisher-Yates: the first k entries form a uniform k-subset.
      std::iota(pool.begin(), pool.end(), std::size_t{0});
      for (int i = 0; i < k; ++i) {
        boost::random::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i), n - 1);
        std::swap(pool[static_cast<std::size_t>(i)], pool[pick(stream)]);
      }
      est = u.scores.row_means(std::span<const std::size_t>(pool.data(), static_cast<std::size_t>(k)));

      std::iota(candidates.begin(), candidates.end(), std::size_t{0});
      std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k_sel - 1),
                       candidates.end(), by_estimate);
      std::size_t hits = 0;
      for (std::size_t r = 0; r < k_sel; ++r) hits += truth.rank(candidates[r]) < k_sel ? 1 : 0;
      total += static_cast<double>(hits) / static_cast<double>(k_sel);
    }
    result.avg_precisions.push_back(total / static_cast<double>(samples_per_size));
  }
  result.fitted_b = fit_exponent_b(result.panel_sizes, result.avg_precisions, u.measured_rho, q);
  return result;
}

std::vector<GridRow> b_grid_scan(std::span<const double> q_values, std::span<const double> rho_targets,
                                 const ScanSettings& settings, std::uint64_t base_seed, unsigned threads) {
  if (q_values.empty() || rho_targets.empty()) throw DomainError("b_grid_scan: empty grid");
  if (settings.max_panel < 1 || static_cast<std::size_t>(settings.max_panel) > settings.universe.n_ais)
    throw ConfigError("b_grid_scan: max_panel must lie in [1, n_ais]");

  std::vector<int> sizes(static_cast<std::size_t>(settings.max_panel));
  std::iota(sizes.begin(), sizes.end(), 1);

  const std::size_t cells = q_values.size() * rho_targets.size();
  std::vector<GridRow> rows(cells);
  parallel_for(cells, threads, [&](std::size_t cell) {
    const double q = q_values[cell / rho_targets.size()];
    const double target = rho_targets[cell % rho_targets.size()];
    UniverseConfig cfg = settings.universe;
    cfg.target_rho = target;
    rng::Stream stream(base_seed, cell);
    const Universe u = generate_universe(cfg, stream);
    const auto scan = panel_precision_scan(u, q, sizes, settings.samples_per_size, stream);
    rows[cell] = {q, target, u.measured_rho, scan.fitted_b};
  });
  return rows;
}

BRegressionRow regress_b_on_rho(std::span<const GridRow> rows) {
  if (rows.size() < 2) throw DomainError("regress_b_on_rho: need at least two rows");
  std::vector<double> x, y;
  for (const auto& r : rows) {
    if (r.q != rows.front().q) throw DomainError("regress_b_on_rho: rows must share one q");
    x.push_back(r.measured_rho);
    y.push_back(r.best_b);
  }
  const auto fit = stats::ordinary_least_squares(x, y);
  return {rows.front().q, fit.slope, fit.intercept, fit.r_squared};
}

std::vector<double> sample_target_rho_like_observed(std::size_t count, rng::Stream& stream) {
  if (count == 0) throw DomainError("sample_target_rho_like_observed: count must be >= 1");
  boost::random::normal_distribution<double> normal(kObservedRhoMean, kObservedRhoSd);
  std::vector<double> out(count);
  for (auto& r : out) r = std::clamp(normal(stream), 0.01, 0.999);
  return out;
}

}  // namespace panelprec::montecarlo
