#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "panelprec/precision.hpp"
#include "panelprec/score_io.hpp"
#include "panelprec/score_matrix.hpp"

// Analysis of ingested score matrices: proxy ground truth, per-scorer
// precision curves, constrained intercepts, panel subsets, and diagnostics.
namespace panelprec::empirics {

struct Correlations {
  std::size_t scorers = 0;
  std::vector<double> matrix;  ///< row-major, unit diagonal
  double mean_offdiag = 0.0;

  double at(std::size_t a, std::size_t b) const { return matrix[a * scorers + b]; }
};

struct ProxyTruth {
  std::vector<double> weights;  ///< sum to 1
  std::vector<double> y;        ///< weighted combination of raw columns
};

struct CurveSet {
  std::vector<precision::PrecisionCurve> per_scorer;
  precision::PrecisionCurve average;
};

struct SubsetRow {
  int size = 0;
  std::size_t subsets = 0;
  double avg_intercept = 0.0;
  double observed_improvement = 0.0;  ///< relative to the previous size; 0 for the first row
};

struct SpearmanBrownRow {
  int size = 0;
  double observed = 0.0;
  double predicted = 0.0;
  double diff_pred_vs_obs = 0.0;  ///< (predicted - observed) / observed
  double diff_obs_vs_pred = 0.0;  ///< (observed - predicted) / predicted
  double predicted_improvement = 0.0;
};

struct SummaryStats {
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct ScoreSummary {
  SummaryStats overall;
  std::map<std::string, SummaryStats> by_group;  ///< keyed by attribute level
};

struct QQPoint {
  double theoretical = 0.0;
  double sample = 0.0;
};

enum class TruthMode { Weighted, Unweighted };

struct VarianceQualityRow {
  std::string task;
  std::size_t scorer = 0;
  double variance = 0.0;
  double corr_with_truth = 0.0;
};

struct VarianceQuality {
  TruthMode mode = TruthMode::Weighted;
  std::vector<VarianceQualityRow> rows;
  double r = 0.0;
  double p_value = 1.0;
};

Correlations pairwise_correlations(const ScoreMatrix& scores);

/// Weights proportional to the leading eigenvector of the correlation matrix
/// (power iteration, tolerance 1e-10), normalised to sum 1, applied to the raw
/// columns. Throws ConvergenceError if the iteration does not settle.
ProxyTruth optimal_weights(const ScoreMatrix& scores);

CurveSet per_ai_precision_curves(const ScoreMatrix& scores, std::span<const double> y,
                                 std::span<const double> q_grid);

/// Intercept at q = 0 of the least-squares line through (1, 1).
double constrained_intercept_fit(const precision::PrecisionCurve& curve);

/// For each size k, enumerates every k-subset of scorers, averages member
/// columns, and averages the constrained intercepts of their curves against y.
std::vector<SubsetRow> panel_subset_analysis(const ScoreMatrix& scores, std::span<const double> y,
                                             std::span<const int> sizes, std::span<const double> q_grid);

/// Predictions nρ̄/(1+(n-1)ρ̄) for each observed size >= 2. Predicted
/// improvement is against the previous prediction, or against the observed
/// size-1 intercept when given and the previous size is 1.
std::vector<SpearmanBrownRow> spearman_brown_comparison(double rho_bar, std::span<const SubsetRow> observed,
                                                        double single_intercept = 0.0);

ScoreSummary summary_stats(const ScoreTable& table);
SummaryStats describe(std::span<const double> values);

/// Sorted standardized values paired with Phi^-1((i - 0.5) / m).
std::vector<QQPoint> qq_data(std::span<const double> scores);

VarianceQuality variance_quality(const ScoreTable& table, TruthMode mode);

/// Everything the analyze command reports for one task.
struct TaskReport {
  std::string name;
  Correlations correlations;
  ProxyTruth truth;
  std::vector<double> q_grid;
  CurveSet curves;
  std::vector<double> per_scorer_intercepts;
  double average_intercept = 0.0;
  std::vector<SubsetRow> subsets;  ///< sizes 1..max
  std::vector<SpearmanBrownRow> spearman_brown;
  std::vector<QQPoint> qq;
};

struct EmpiricalReport {
  std::vector<std::string> scorer_names;
  std::vector<TaskReport> tasks;
  ScoreSummary summary;
  std::optional<VarianceQuality> weighted;    ///< absent with fewer than 3 (task, scorer) rows
  std::optional<VarianceQuality> unweighted;
};

struct AnalysisOptions {
  std::vector<int> subset_sizes = {2, 3, 4};
  std::size_t grid_points = 100;  ///< linear q grid used for curves and intercepts
};

EmpiricalReport analyze(const ScoreTable& table, const AnalysisOptions& options = {}, unsigned threads = 1);

}  // namespace panelprec::empirics
