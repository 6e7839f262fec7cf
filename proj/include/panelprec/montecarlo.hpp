#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "panelprec/random.hpp"
#include "panelprec/score_matrix.hpp"

// Panel-scaling simulator: synthetic universes of correlated scorers,
// precision-vs-panel-size scans, and efficiency-exponent fitting.
namespace panelprec::montecarlo {

struct UniverseConfig {
  std::size_t n_ais = 100;
  std::size_t m_candidates = 2000;
  double target_rho = 0.5;
  double sig_rho = 0.05;       ///< sd of the per-scorer loading parameter r_i
  double rho_sig_corr = 0.78;  ///< correlation between r_i and the scale s_i
  double scale_min = 0.2;
  double scale_max = 1.2;
  double scale_sd = 0.2;
  double t_mean = 7.0;
  rng::TailTransform tail{};

  void validate() const;
};

struct Universe {
  ScoreMatrix scores;          ///< m_candidates x n_ais
  std::vector<double> y_true;  ///< row means of scores
  double measured_rho = 0.0;   ///< mean off-diagonal correlation
  std::vector<double> loadings;  ///< clipped r_i per scorer
  std::vector<double> scales;    ///< clipped s_i per scorer
};

struct PanelScanResult {
  double q = 0.0;
  std::vector<int> panel_sizes;
  std::vector<double> avg_precisions;
  std::size_t samples_per_size = 0;
  double measured_rho = 0.0;
  double fitted_b = 0.0;
};

struct GridRow {
  double q = 0.0;
  double target_rho = 0.0;
  double measured_rho = 0.0;
  double best_b = 0.0;
};

struct BRegressionRow {
  double q = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Scan and universe sizes used by b_grid_scan.
struct ScanSettings {
  UniverseConfig universe{};
  int max_panel = 30;
  std::size_t samples_per_size = 4000;
};

enum class Preset { Paper, Desk };

Preset parse_preset(std::string_view name);
std::string_view to_string(Preset preset);

/// Paper: 100 scorers, 2000 candidates, 4000 subsets per size, sizes 1..30.
/// Desk: 40 scorers, 1000 candidates, 800 subsets per size, sizes 1..30.
ScanSettings preset_settings(Preset preset);

Universe generate_universe(const UniverseConfig& cfg, rng::Stream& stream);

/// Panel-law prediction (k^b rho + q(1 - rho)) / (1 + (k^b - 1) rho).
double panel_law(double k, double rho, double b, double q);

inline constexpr double kExponentLow = 0.01;
inline constexpr double kExponentHigh = 1.5;
inline constexpr double kExponentTolerance = 1e-4;

/// Least-squares b in [0.01, 1.5] for observed precisions against panel_law.
double fit_exponent_b(std::span<const int> sizes, std::span<const double> precisions, double rho, double q);

/// For each size k, averages precision_at_q(subset mean, y_true, q) over
/// `samples_per_size` uniformly drawn k-subsets of scorers, then fits b.
PanelScanResult panel_precision_scan(const Universe& u, double q, std::span<const int> sizes,
                                     std::size_t samples_per_size, rng::Stream& stream);

/// One row per (q, target_rho) cell in q-major order. Cell i draws from
/// Stream(base_seed, i), so rows do not depend on the thread count.
std::vector<GridRow> b_grid_scan(std::span<const double> q_values, std::span<const double> rho_targets,
                                 const ScanSettings& settings, std::uint64_t base_seed, unsigned threads = 1);

/// OLS of best_b on measured_rho over rows sharing one q.
BRegressionRow regress_b_on_rho(std::span<const GridRow> rows);

inline constexpr double kObservedRhoMean = 0.534;
inline constexpr double kObservedRhoSd = 0.136;

/// Normal(0.534, 0.136) draws clipped to [0.01, 0.999].
std::vector<double> sample_target_rho_like_observed(std::size_t count, rng::Stream& stream);

}  // namespace panelprec::montecarlo
