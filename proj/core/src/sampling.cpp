#include "esampling/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "esampling/quadrature.hpp"

namespace esampling {

double nmse(const PsdModel& model, double f_s) {
  if (!(f_s > 0.0)) throw std::invalid_argument("nmse: f_s must be positive");
  const double cut = support_cutoff(model);
  const double half = 0.5 * f_s;

  // Both the numerator sum over k and the aliased denominator share the same
  // replica range, so the whole double sum collapses to one baseband integral.
  const auto integrand = [&](double f) {
    const long k_lo = static_cast<long>(std::ceil((f - cut) / f_s));
    const long k_hi = static_cast<long>(std::floor((f + cut) / f_s));
    double num = 0.0, den = 0.0;
    for (long k = k_lo; k <= k_hi; ++k) {
      const double s = psd_eval(model, f - static_cast<double>(k) * f_s);
      num += s * s;
      den += s;
    }
    return den > 0.0 ? num / den : 0.0;
  };

  std::vector<double> bp;
  replica_breakpoints(model, f_s, -half, half, bp);
  const double integral = integrate_adaptive_simpson(
      integrand, -half, half, 1e-9 * model.sigma_x2, bp);
  return std::clamp(1.0 - integral / model.sigma_x2, 0.0, 1.0);
}

double nmse_flat_closed_form(double f_m, double f_s) {
  if (!(f_m > 0.0) || !(f_s > 0.0))
    throw std::invalid_argument("nmse_flat_closed_form: f_m, f_s must be positive");
  return std::max(0.0, 1.0 - f_s / (2.0 * f_m));
}

double reconstruction_filter_response(const PsdModel& model, double f_s, double f) {
  if (!(f_s > 0.0))
    throw std::invalid_argument("reconstruction_filter_response: f_s must be positive");
  const double num = psd_eval(model, f);
  if (num <= 0.0) return 0.0;
  const double den = aliased_sum(model, f, f_s);
  return den > 0.0 ? num / den : 0.0;
}

double quantization_nmse(int n_bits) {
  if (n_bits < 1) throw std::invalid_argument("quantization_nmse: n must be >= 1");
  return std::pow(10.0, -0.6 * n_bits);
}

NmseResult nmse_result(const PsdModel& model, double f_s, int n_bits) {
  return NmseResult{f_s, nmse(model, f_s), quantization_nmse(n_bits)};
}

}  // namespace esampling
