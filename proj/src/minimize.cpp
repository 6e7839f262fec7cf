#include "panelprec/minimize.hpp"

#include <cmath>
#include <limits>

#include "panelprec/errors.hpp"

namespace panelprec::optimize {
namespace {

double sign_or_one(double v) { return v >= 0.0 ? 1.0 : -1.0; }

}  // namespace

ScalarMinimum minimize_bounded(const std::function<double(double)>& f, double lo, double hi, double abs_tol,
                               std::size_t max_evaluations) {
  if (!(lo < hi)) throw DomainError("minimize_bounded: require lo < hi");
  if (!(abs_tol > 0.0)) throw DomainError("minimize_bounded: tolerance must be positive");

  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  const double golden = 0.5 * (3.0 - std::sqrt(5.0));

  double a = lo, b = hi;
  // x: best point so far; w: second best; v: previous w.
  double x = a + golden * (b - a);
  double w = x, v = x;
  double fx = f(x);
  double fw = fx, fv = fx;
  double step = 0.0, prev_step = 0.0;
  std::size_t evaluations = 1;

  double mid = 0.5 * (a + b);
  double tol1 = sqrt_eps * std::abs(x) + abs_tol / 3.0;
  double tol2 = 2.0 * tol1;

  while (std::abs(x - mid) > tol2 - 0.5 * (b - a)) {
    bool use_golden = true;
    if (std::abs(prev_step) > tol1) {
      // Parabola through (x, fx), (w, fw), (v, fv).
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      r = prev_step;
      prev_step = step;
      if (std::abs(p) < std::abs(0.5 * q * r) && p > q * (a - x) && p < q * (b - x)) {
        step = p / q;
        const double u = x + step;
        if (u - a < tol2 || b - u < tol2) step = tol1 * sign_or_one(mid - x);
        use_golden = false;
      }
    }
    if (use_golden) {
      prev_step = x >= mid ? a - x : b - x;
      step = golden * prev_step;
    }

    const double u = x + sign_or_one(step) * std::max(std::abs(step), tol1);
    const double fu = f(u);
    ++evaluations;

    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }

    mid = 0.5 * (a + b);
    tol1 = sqrt_eps * std::abs(x) + abs_tol / 3.0;
    tol2 = 2.0 * tol1;
    if (evaluations >= max_evaluations) return {x, fx, evaluations, false};
  }
  return {x, fx, evaluations, true};
}

}  // namespace panelprec::optimize
