#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "fixtures.hpp"
#include "panelprec/core_model.hpp"
#include "panelprec/empirics.hpp"
#include "panelprec/errors.hpp"
#include "panelprec/stats.hpp"

using namespace panelprec;
using namespace panelprec::empirics;

TEST_CASE("exact equicorrelated fixture") {
  const auto x = fixture::exact_equicorrelated(500, 5, 0.545, 1);
  const auto c = pairwise_correlations(x);
  for (std::size_t a = 0; a < 5; ++a) {
    CHECK(c.at(a, a) == doctest::Approx(1.0));
    for (std::size_t b = 0; b < 5; ++b) {
      CHECK(c.at(a, b) == c.at(b, a));
      if (a != b) CHECK(c.at(a, b) == doctest::Approx(0.545).epsilon(1e-9));
    }
  }
  CHECK(c.mean_offdiag == doctest::Approx(0.545));
}

TEST_CASE("optimal weights solve the eigen equation and sum to one") {
  rng::Stream s(4);
  std::vector<std::vector<double>> cols(4, std::vector<double>(800));
  std::vector<double> common(800);
  for (auto& v : common) v = rng::standard_normal(s);
  const double load[] = {0.9, 0.7, 0.5, 0.3};
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t r = 0; r < 800; ++r)
      cols[j][r] = (j + 1.0) * (load[j] * common[r] + std::sqrt(1 - load[j] * load[j]) * rng::standard_normal(s));
  const auto x = ScoreMatrix::from_columns(cols);
  const auto t = optimal_weights(x);
  CHECK(std::accumulate(t.weights.begin(), t.weights.end(), 0.0) == doctest::Approx(1.0));
  const auto c = pairwise_correlations(x);
  // C w = lambda w with one lambda for every component.
  std::vector<double> cw(4, 0.0);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) cw[a] += c.at(a, b) * t.weights[b];
  const double lambda = cw[0] / t.weights[0];
  for (std::size_t a = 0; a < 4; ++a) CHECK(cw[a] == doctest::Approx(lambda * t.weights[a]).epsilon(1e-8));
  CHECK(t.weights[0] > t.weights[3]);
  // The proxy truth applies the weights to the raw columns.
  CHECK(t.y[17] == doctest::Approx(x(17, 0) * t.weights[0] + x(17, 1) * t.weights[1] + x(17, 2) * t.weights[2] +
                                   x(17, 3) * t.weights[3]));
}

TEST_CASE("exchangeable scorers get equal weights") {
  const auto x = fixture::exact_equicorrelated(300, 6, 0.4, 2);
  for (const double w : optimal_weights(x).weights) CHECK(w == doctest::Approx(1.0 / 6));
}

TEST_CASE("constrained intercept") {
  precision::PrecisionCurve line;
  for (int i = 1; i <= 100; ++i) {
    line.q_grid.push_back(i / 100.0);
    line.values.push_back(0.37 + 0.63 * i / 100.0);
  }
  CHECK(constrained_intercept_fit(line) == doctest::Approx(0.37));
  // Closed form of the least-squares slope through (1, 1).
  precision::PrecisionCurve bent{{0.1, 0.4, 0.9}, {0.5, 0.6, 0.95}};
  double sdd = 0, sdp = 0;
  for (int i = 0; i < 3; ++i) {
    sdd += (bent.q_grid[i] - 1) * (bent.q_grid[i] - 1);
    sdp += (bent.q_grid[i] - 1) * (bent.values[i] - 1);
  }
  CHECK(constrained_intercept_fit(bent) == doctest::Approx(1 - sdp / sdd));
  CHECK(constrained_intercept_fit({{1.0}, {1.0}}) == 1.0);
  CHECK_THROWS_AS(constrained_intercept_fit({{}, {}}), DomainError);
}

TEST_CASE("panel subsets") {
  rng::Stream s(6);
  const auto x = fixture::factor_columns(400, 5, 0.5, s);
  const auto y = optimal_weights(x).y;
  const auto grid = precision::linear_q_grid(50);
  const std::vector<int> sizes{1, 2, 3, 4, 5};
  const auto rows = panel_subset_analysis(x, y, sizes, grid);
  const std::size_t expected[] = {5, 10, 10, 5, 1};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].size == sizes[i]);
    CHECK(rows[i].subsets == expected[i]);
    if (i > 0) {
      CHECK(rows[i].avg_intercept > rows[i - 1].avg_intercept);
      CHECK(rows[i].observed_improvement == doctest::Approx(rows[i].avg_intercept / rows[i - 1].avg_intercept - 1));
    }
  }
  CHECK(rows[0].observed_improvement == 0.0);
  const std::vector<int> bad{6};
  CHECK_THROWS_AS(panel_subset_analysis(x, y, bad, grid), DomainError);
}

TEST_CASE("Spearman-Brown comparison") {
  const std::vector<SubsetRow> obs{{1, 5, 0.55, 0}, {2, 10, 0.69, 0}, {3, 10, 0.77, 0}, {4, 5, 0.82, 0}};
  const auto sb = spearman_brown_comparison(0.545, obs, 0.55);
  REQUIRE(sb.size() == 3);
  CHECK(sb[0].predicted == doctest::Approx(0.7055).epsilon(1e-4));
  CHECK(sb[1].predicted == doctest::Approx(0.7823).epsilon(1e-4));
  CHECK(sb[2].predicted == doctest::Approx(0.8273).epsilon(1e-4));
  CHECK(sb[0].diff_pred_vs_obs == doctest::Approx((sb[0].predicted - 0.69) / 0.69));
  CHECK(sb[0].diff_obs_vs_pred == doctest::Approx((0.69 - sb[0].predicted) / sb[0].predicted));
  CHECK(sb[0].predicted_improvement == doctest::Approx(sb[0].predicted / 0.55 - 1));
  CHECK(sb[1].predicted_improvement == doctest::Approx(sb[1].predicted / sb[0].predicted - 1));
}

TEST_CASE("QQ data") {
  std::vector<double> v{4, -1, 2, 9, 0, 3, 5};
  const auto qq = qq_data(v);
  REQUIRE(qq.size() == 7);
  for (std::size_t i = 1; i < qq.size(); ++i) {
    CHECK(qq[i].sample >= qq[i - 1].sample);
    CHECK(qq[i].theoretical > qq[i - 1].theoretical);
  }
  CHECK(qq[3].theoretical == doctest::Approx(0.0));
  CHECK(qq[0].theoretical == doctest::Approx(-qq[6].theoretical));
  CHECK(qq[0].sample == doctest::Approx((-1 - stats::mean(v)) / stats::population_sd(v)));
  const std::vector<double> flat(5, 1.0);
  CHECK_THROWS_AS(qq_data(flat), DomainError);
}

TEST_CASE("summary statistics by group") {
  auto table = fixture::table_of({fixture::exact_equicorrelated(10, 2, 0.5, 3)});
  const auto s = summary_stats(table);
  CHECK(s.overall.count == 20);
  REQUIRE(s.by_group.size() == 2);
  CHECK(s.by_group.at("F").count == 10);
  CHECK(s.overall.mean == doctest::Approx(5.0));
}

TEST_CASE("variance-quality association") {
  rng::Stream s(13);
  std::vector<ScoreMatrix> tasks;
  for (int i = 0; i < 3; ++i) tasks.push_back(fixture::factor_columns(200, 4, 0.5, s));
  const auto table = fixture::table_of(tasks);
  for (const auto mode : {TruthMode::Weighted, TruthMode::Unweighted}) {
    const auto vq = variance_quality(table, mode);
    REQUIRE(vq.rows.size() == 12);
    std::vector<double> a, b;
    for (const auto& r : vq.rows) a.push_back(r.variance), b.push_back(r.corr_with_truth);
    CHECK(vq.r == doctest::Approx(stats::pearson(a, b)));
    CHECK(vq.p_value == doctest::Approx(stats::pearson_p_value(vq.r, 12)));
  }
  const auto tiny = fixture::table_of({fixture::exact_equicorrelated(20, 2, 0.5, 1)});
  CHECK_THROWS_AS(variance_quality(tiny, TruthMode::Weighted), DomainError);
}

TEST_CASE("analysis of an exact fixture reproduces Spearman-Brown predictions") {
  const auto table = fixture::table_of({fixture::exact_equicorrelated(2000, 5, 0.545, 21)});
  const auto report = analyze(table);
  REQUIRE(report.tasks.size() == 1);
  const auto& sb = report.tasks[0].spearman_brown;
  REQUIRE(sb.size() == 3);
  // Exact predictions at 0.545, and within one unit of the third decimal of the
  // published 0.706 / 0.783 / 0.828 (those were computed from an unrounded mean).
  const double exact[] = {0.7055, 0.7823, 0.8273};
  const double published[] = {0.706, 0.783, 0.828};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(sb[i].predicted - exact[i]) < 5e-5);
    CHECK(std::abs(sb[i].predicted - published[i]) < 1e-3);
  }
  CHECK(report.tasks[0].subsets.size() == 4);
  CHECK(report.weighted.has_value());
}

TEST_CASE("a two-scorer table limits subsets to size two") {
  const auto table = fixture::table_of({fixture::exact_equicorrelated(50, 2, 0.6, 5)});
  const auto report = analyze(table);
  const auto& subsets = report.tasks[0].subsets;
  REQUIRE(subsets.size() == 2);
  CHECK(subsets[1].size == 2);
  CHECK(subsets[1].subsets == 1);
  CHECK_FALSE(report.weighted.has_value());
}

TEST_CASE("analysis does not depend on the thread count") {
  rng::Stream s(31);
  const auto table = fixture::table_of({fixture::factor_columns(300, 4, 0.5, s), fixture::factor_columns(300, 4, 0.6, s)});
  const auto a = analyze(table, {}, 1);
  const auto b = analyze(table, {}, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(a.tasks[i].average_intercept == b.tasks[i].average_intercept);
    CHECK(a.tasks[i].truth.weights == b.tasks[i].truth.weights);
  }
}
