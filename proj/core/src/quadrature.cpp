#include "esampling/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace esampling {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b, double abs_tol,
                                  int max_depth) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  return sign * adapt(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

double integrate_adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b, double abs_tol,
                                  std::span<const double> breakpoints,
                                  int max_depth) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::vector<double> knots{a, b};
  for (double x : breakpoints) {
    if (x > a && x < b) knots.push_back(x);
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  double total = 0.0;
  const double span = b - a;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double lo = knots[i], hi = knots[i + 1];
    const double tol = abs_tol * std::max((hi - lo) / span, 1e-6);
    total += integrate_adaptive_simpson(f, lo, hi, tol, max_depth);
  }
  return sign * total;
}

}  // namespace esampling
