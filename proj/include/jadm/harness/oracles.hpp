#pragma once

// Reference computations that share no code with the solvers: an explicit-loop
// cost evaluator, central finite differences along curves, and exhaustive grid
// minimization of the two-parameter rotation models.

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "jadm/cost.hpp"

namespace jadm::harness {

/// f(U, X) with every product written out as loops over indices.
double bruteforce_cost(const JadmProblem& problem, const CMat& u, const CMat& x);

/// (h(t) - h(-t)) / (2 t) for a scalar function of one real variable.
inline double central_difference(const std::function<double(double)>& h, double step) {
  return (h(step) - h(-step)) / (2.0 * step);
}

/// |a - b| / max(|a|, |b|, floor): relative error that stays meaningful near zero.
inline double relative_error(double a, double b, double floor = 1e-8) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

struct GridMinimum {
  double x = 0.0;
  double y = 0.0;
  double value = std::numeric_limits<double>::infinity();
};

/// Minimum of f over the uniform grid {x0 + k dx} x {y0 + l dy} inside [x0, x1] x [y0, y1].
template <class F>
GridMinimum grid_minimum(F&& f, double x0, double x1, double dx, double y0, double y1,
                         double dy) {
  GridMinimum best;
  const long nx = static_cast<long>(std::floor((x1 - x0) / dx + 1e-9));
  const long ny = static_cast<long>(std::floor((y1 - y0) / dy + 1e-9));
  for (long a = 0; a <= nx; ++a) {
    const double x = x0 + static_cast<double>(a) * dx;
    for (long b = 0; b <= ny; ++b) {
      const double y = y0 + static_cast<double>(b) * dy;
      const double v = f(x, y);
      if (v < best.value) best = {x, y, v};
    }
  }
  return best;
}

/// Minimum of f over a geometric grid of `points` values spanning [lo, hi].
template <class F>
GridMinimum log_grid_minimum(F&& f, double lo, double hi, long points) {
  GridMinimum best;
  const double ratio = std::log(hi / lo) / static_cast<double>(points - 1);
  for (long a = 0; a < points; ++a) {
    const double x = lo * std::exp(ratio * static_cast<double>(a));
    const double v = f(x);
    if (v < best.value) best = {x, 0.0, v};
  }
  return best;
}

}  // namespace jadm::harness
