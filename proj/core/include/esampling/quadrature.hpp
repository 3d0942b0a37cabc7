#pragma once

#include <functional>
#include <span>
#include <vector>

namespace esampling {

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance abs_tol.
// Recursion stops when the two-panel refinement changes the estimate by less
// than 15x the local tolerance share, or at max_depth.
double integrate_adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b, double abs_tol,
                                  int max_depth = 50);

// Same, but the interval is pre-split at the given breakpoints (integrand
// kinks / support edges). Breakpoints outside (a, b) are ignored.
double integrate_adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b, double abs_tol,
                                  std::span<const double> breakpoints,
                                  int max_depth = 50);

}  // namespace esampling
