#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "panelprec/random.hpp"
#include "panelprec/score_io.hpp"
#include "panelprec/score_matrix.hpp"

namespace fixture {

// n columns over m candidates whose sample pairwise correlations all equal
// rho exactly: a common factor and n idiosyncratic vectors are made centered
// and mutually orthonormal before mixing.
inline panelprec::ScoreMatrix exact_equicorrelated(std::size_t m, std::size_t n, double rho, std::uint64_t seed,
                                                   double shift = 5.0) {
  panelprec::rng::Stream s(seed, 99);
  std::vector<std::vector<double>> basis(n + 1, std::vector<double>(m));
  for (auto& b : basis) {
    for (auto& x : b) x = panelprec::rng::standard_normal(s);
    double mean = 0.0;
    for (const double x : b) mean += x;
    mean /= static_cast<double>(m);
    for (auto& x : b) x -= mean;
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double dot = 0.0;
      for (std::size_t r = 0; r < m; ++r) dot += basis[i][r] * basis[j][r];
      for (std::size_t r = 0; r < m; ++r) basis[i][r] -= dot * basis[j][r];
    }
    double norm = 0.0;
    for (const double x : basis[i]) norm += x * x;
    norm = std::sqrt(norm);
    for (auto& x : basis[i]) x /= norm;
  }
  std::vector<std::vector<double>> cols(n, std::vector<double>(m));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t r = 0; r < m; ++r)
      cols[j][r] = shift + std::sqrt(rho) * basis[0][r] + std::sqrt(1.0 - rho) * basis[j + 1][r];
  return panelprec::ScoreMatrix::from_columns(cols);
}

// Independent factor-model columns (sample correlations scatter around rho).
inline panelprec::ScoreMatrix factor_columns(std::size_t m, std::size_t n, double rho, panelprec::rng::Stream& s) {
  std::vector<double> common(m);
  for (auto& x : common) x = panelprec::rng::standard_normal(s);
  std::vector<std::vector<double>> cols(n, std::vector<double>(m));
  for (auto& c : cols)
    for (std::size_t r = 0; r < m; ++r)
      c[r] = std::sqrt(rho) * common[r] + std::sqrt(1.0 - rho) * panelprec::rng::standard_normal(s);
  return panelprec::ScoreMatrix::from_columns(cols);
}

inline panelprec::empirics::ScoreTable table_of(std::vector<panelprec::ScoreMatrix> tasks) {
  panelprec::empirics::ScoreTable t;
  const std::size_t n = tasks.front().scorers();
  for (std::size_t j = 0; j < n; ++j) t.scorer_names.push_back("ai" + std::to_string(j + 1));
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    panelprec::empirics::Task task;
    task.name = "task" + std::to_string(i + 1);
    for (std::size_t r = 0; r < tasks[i].candidates(); ++r) {
      task.candidate_ids.push_back("c" + std::to_string(r + 1));
      task.attrs.push_back(r % 2 ? "M" : "F");
    }
    task.scores = std::move(tasks[i]);
    t.tasks.push_back(std::move(task));
  }
  return t;
}

}  // namespace fixture
