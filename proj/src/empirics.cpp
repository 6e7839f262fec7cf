#include "panelprec/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "panelprec/core_model.hpp"
#include "panelprec/errors.hpp"
#include "panelprec/normal.hpp"
#include "panelprec/parallel.hpp"
#include "panelprec/stats.hpp"

namespace panelprec::empirics {
namespace {

constexpr double kPowerTolerance = 1e-10;
constexpr int kPowerMaxIterations = 100000;

// Calls visit(subset) for every k-subset of {0..n-1} in lexicographic order.
template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    visit(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Correlations pairwise_correlations(const ScoreMatrix& scores) {
  if (scores.scorers() < 2) throw DomainError("pairwise_correlations: need at least two scorers");
  Correlations out;
  out.scorers = scores.scorers();
  out.matrix = stats::correlation_matrix(scores);
  double sum = 0.0;
  for (std::size_t a = 0; a < out.scorers; ++a)
    for (std::size_t b = a + 1; b < out.scorers; ++b) sum += out.at(a, b);
  out.mean_offdiag = sum / (static_cast<double>(out.scorers * (out.scorers - 1)) / 2.0);
  return out;
}

ProxyTruth optimal_weights(const ScoreMatrix& scores) {
  const auto corr = pairwise_correlations(scores);
  const std::size_t n = corr.scorers;

  // Power iteration on C + I: the shift keeps every eigenvalue positive so the
  // dominant one is the leading eigenvalue of C.
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> next(n);
  bool converged = false;
  for (int it = 0; it < kPowerMaxIterations && !converged; ++it) {
    for (std::size_t a = 0; a < n; ++a) {
      double s = v[a];
      for (std::size_t b = 0; b < n; ++b) s += corr.at(a, b) * v[b];
      next[a] = s;
    }
    const double norm = std::sqrt(std::inner_product(next.begin(), next.end(), next.begin(), 0.0));
    if (!(norm > 0.0)) throw ConvergenceError("optimal_weights: degenerate correlation matrix");
    double change = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      next[a] /= norm;
      change = std::max(change, std::abs(next[a] - v[a]));
    }
    v.swap(next);
    converged = change < kPowerTolerance;
  }
  if (!converged) throw ConvergenceError("optimal_weights: power iteration did not converge");

  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (!(std::abs(total) > 0.0)) throw ConvergenceError("optimal_weights: leading eigenvector sums to zero");
  ProxyTruth out;
  out.weights.resize(n);
  for (std::size_t a = 0; a < n; ++a) out.weights[a] = v[a] / total;
  out.y = scores.weighted_rows(out.weights);
  return out;
}

CurveSet per_ai_precision_curves(const ScoreMatrix& scores, std::span<const double> y,
                                 std::span<const double> q_grid) {
  if (y.size() != scores.candidates()) throw DomainError("per_ai_precision_curves: truth length mismatch");
  const precision::Ranking truth(y);
  CurveSet out;
  out.average = {{q_grid.begin(), q_grid.end()}, std::vector<double>(q_grid.size(), 0.0)};
  for (std::size_t j = 0; j < scores.scorers(); ++j) {
    out.per_scorer.push_back(precision::precision_curve(scores.column(j), truth, q_grid));
    for (std::size_t i = 0; i < q_grid.size(); ++i) out.average.values[i] += out.per_scorer.back().values[i];
  }
  for (auto& v : out.average.values) v /= static_cast<double>(scores.scorers());
  return out;
}

double constrained_intercept_fit(const precision::PrecisionCurve& curve) {
  if (curve.q_grid.empty() || curve.q_grid.size() != curve.values.size())
    throw DomainError("constrained_intercept_fit: empty or misaligned curve");
  double sdd = 0.0, sdp = 0.0;
  for (std::size_t i = 0; i < curve.q_grid.size(); ++i) {
    const double d = curve.q_grid[i] - 1.0;
    sdd += d * d;
    sdp += d * (curve.values[i] - 1.0);
  }
  // Only q = 1 points: the line is undetermined, report the anchor value.
  if (sdd == 0.0) return 1.0;
  return 1.0 - sdp / sdd;
}

std::vector<SubsetRow> panel_subset_analysis(const ScoreMatrix& scores, std::span<const double> y,
                                             std::span<const int> sizes, std::span<const double> q_grid) {
  if (y.size() != scores.candidates()) throw DomainError("panel_subset_analysis: truth length mismatch");
  const precision::Ranking truth(y);
  std::vector<SubsetRow> rows;
  for (const int k : sizes) {
    if (k < 1 || static_cast<std::size_t>(k) > scores.scorers())
      throw DomainError("panel_subset_analysis: subset size out of range");
    SubsetRow row{k, 0, 0.0, 0.0};
    for_each_subset(scores.scorers(), static_cast<std::size_t>(k), [&](std::span<const std::size_t> subset) {
      const auto panel = scores.row_means(subset);
      row.avg_intercept += constrained_intercept_fit(precision::precision_curve(panel, truth, q_grid));
      ++row.subsets;
    });
    row.avg_intercept /= static_cast<double>(row.subsets);
    if (!rows.empty()) row.observed_improvement = row.avg_intercept / rows.back().avg_intercept - 1.0;
    rows.push_back(row);
  }
  return rows;
}

std::vector<SpearmanBrownRow> spearman_brown_comparison(double rho_bar, std::span<const SubsetRow> observed,
                                                        double single_intercept) {
  std::vector<SpearmanBrownRow> out;
  double previous_prediction = 0.0;
  int previous_size = 0;
  for (const auto& row : observed) {
    if (row.size < 2) continue;
    SpearmanBrownRow r;
    r.size = row.size;
    r.observed = row.avg_intercept;
    r.predicted = model::spearman_brown(row.size, rho_bar);
    r.diff_pred_vs_obs = (r.predicted - r.observed) / r.observed;
    r.diff_obs_vs_pred = (r.observed - r.predicted) / r.predicted;
    if (previous_size == row.size - 1 && previous_size >= 2) {
      r.predicted_improvement = r.predicted / previous_prediction - 1.0;
    } else if (row.size == 2 && single_intercept > 0.0) {
      r.predicted_improvement = r.predicted / single_intercept - 1.0;
    }
    previous_prediction = r.predicted;
    previous_size = row.size;
    out.push_back(r);
  }
  return out;
}

SummaryStats describe(std::span<const double> values) {
  if (values.empty()) throw DomainError("describe: no values");
  SummaryStats s;
  s.count = values.size();
  s.mean = stats::mean(values);
  s.sd = stats::population_sd(values);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

ScoreSummary summary_stats(const ScoreTable& table) {
  std::vector<double> all;
  std::map<std::string, std::vector<double>> groups;
  for (const auto& t : table.tasks) {
    for (std::size_t i = 0; i < t.scores.candidates(); ++i) {
      for (std::size_t j = 0; j < t.scores.scorers(); ++j) {
        all.push_back(t.scores(i, j));
        if (!t.attrs[i].empty()) groups[t.attrs[i]].push_back(t.scores(i, j));
      }
    }
  }
  ScoreSummary out;
  out.overall = describe(all);
  for (const auto& [level, values] : groups) out.by_group[level] = describe(values);
  return out;
}

std::vector<QQPoint> qq_data(std::span<const double> scores) {
  if (scores.size() < 3) throw DomainError("qq_data: need at least three values");
  const double mu = stats::mean(scores);
  const double sd = stats::population_sd(scores);
  if (!(sd > 0.0)) throw DomainError("qq_data: constant input");
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  const auto m = static_cast<double>(sorted.size());
  std::vector<QQPoint> out(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out[i].theoretical = normal::quantile((static_cast<double>(i) + 0.5) / m);
    out[i].sample = (sorted[i] - mu) / sd;
  }
  return out;
}

VarianceQuality variance_quality(const ScoreTable& table, TruthMode mode) {
  VarianceQuality out;
  out.mode = mode;
  for (const auto& t : table.tasks) {
    const auto truth = mode == TruthMode::Weighted ? optimal_weights(t.scores).y : t.scores.row_means();
    for (std::size_t j = 0; j < t.scores.scorers(); ++j) {
      const auto col = t.scores.column(j);
      out.rows.push_back({t.name, j, stats::population_variance(col), stats::pearson(col, truth)});
    }
  }
  if (out.rows.size() < 3) throw DomainError("variance_quality: need at least three (task, scorer) rows");
  std::vector<double> variance, quality;
  for (const auto& r : out.rows) {
    variance.push_back(r.variance);
    quality.push_back(r.corr_with_truth);
  }
  out.r = stats::pearson(variance, quality);
  out.p_value = stats::pearson_p_value(out.r, out.rows.size());
  return out;
}

EmpiricalReport analyze(const ScoreTable& table, const AnalysisOptions& options, unsigned threads) {
  table.validate();
  EmpiricalReport report;
  report.scorer_names = table.scorer_names;
  report.summary = summary_stats(table);

  const std::size_t n = table.scorer_names.size();
  std::vector<int> sizes{1};
  for (const int k : options.subset_sizes)
    if (k >= 2 && static_cast<std::size_t>(k) <= n && std::find(sizes.begin(), sizes.end(), k) == sizes.end())
      sizes.push_back(k);
  std::sort(sizes.begin(), sizes.end());
  const auto grid = precision::linear_q_grid(options.grid_points);

  report.tasks.resize(table.tasks.size());
  parallel_for(table.tasks.size(), threads, [&](std::size_t i) {
    const Task& task = table.tasks[i];
    TaskReport& r = report.tasks[i];
    r.name = task.name;
    r.correlations = pairwise_correlations(task.scores);
    r.truth = optimal_weights(task.scores);
    r.q_grid = grid;
    r.curves = per_ai_precision_curves(task.scores, r.truth.y, grid);
    for (const auto& c : r.curves.per_scorer) r.per_scorer_intercepts.push_back(constrained_intercept_fit(c));
    r.average_intercept = constrained_intercept_fit(r.curves.average);
    r.subsets = panel_subset_analysis(task.scores, r.truth.y, sizes, grid);
    r.spearman_brown = spearman_brown_comparison(std::clamp(r.correlations.mean_offdiag, 0.0, 1.0), r.subsets,
                                                 r.subsets.front().avg_intercept);
    if (task.scores.candidates() >= 3) r.qq = qq_data(task.scores.values());
  });

  std::size_t rows = 0;
  for (const auto& t : table.tasks) rows += t.scores.scorers();
  if (rows >= 3) {
    report.weighted = variance_quality(table, TruthMode::Weighted);
    report.unweighted = variance_quality(table, TruthMode::Unweighted);
  }
  return report;
}

}  // namespace panelprec::empirics
