#pragma once

#include <cstddef>
#include <functional>

namespace panelprec::optimize {

struct ScalarMinimum {
  double x = 0.0;
  double fx = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Brent's bounded minimization (golden-section steps with parabolic
/// interpolation) of f on [lo, hi], stopping when the bracket around the
/// incumbent is within abs_tol.
ScalarMinimum minimize_bounded(const std::function<double(double)>& f, double lo, double hi,
                               double abs_tol = 1e-5, std::size_t max_evaluations = 500);

}  // namespace panelprec::optimize
