#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace esampling {

enum class PsdKind { kFlat, kUnimodal, kMultimodal, kTabulated };

// Two-sided power spectral density of a zero-mean wide-sense stationary
// input. All kinds are even in f and integrate to sigma_x2.
//
//   Flat:       sigma_x2 / (2 f_m) on [-f_m, f_m], 0 outside
//   Unimodal:   alpha exp(-f^2 / 2 sigma^2),  alpha = sigma_x2 / sqrt(2 pi sigma^2)
//   Multimodal: alpha/2 [exp(-(f-f_m)^2/2 sigma^2) + exp(-(f+f_m)^2/2 sigma^2)]
//   Tabulated:  piecewise-linear interpolation of (f >= 0, density) knots,
//               mirrored to negative frequencies; clamped at 0.
struct PsdModel {
  PsdKind kind = PsdKind::kFlat;
  double sigma_x2 = 0.0;  // total power [V^2]
  double f_m = 0.0;       // characteristic / max frequency [Hz]
  double sigma = 0.0;     // spectral width [Hz], Gaussian kinds only
  // Positive-frequency half, strictly increasing, first knot at f = 0.
  std::vector<std::pair<double, double>> table;
};

PsdModel make_flat_psd(double sigma_x2, double f_m);
PsdModel make_unimodal_psd(double sigma_x2, double f_m, double sigma);
PsdModel make_multimodal_psd(double sigma_x2, double f_m, double sigma);

// sigma_x2 is computed from the table (trapezoid over the mirrored knots).
PsdModel make_tabulated_psd(std::vector<std::pair<double, double>> half_table);

// CSV schema: header optional, rows "frequency_hz,density_v2_per_hz",
// positive-frequency half only.
PsdModel load_tabulated_psd_csv(const std::string& path);

void validate(const PsdModel& model);

// S_x(f). Even in f. Tabulated queries beyond the table raise
// std::domain_error unless the table ends in a zero run (compact support,
// zero outside).
double psd_eval(const PsdModel& model, double f);

// Frequency beyond which the density is treated as zero: the exact support
// edge for Flat / compact Tabulated, the 1e-12-of-peak falloff point for
// Gaussian kinds, the table end otherwise.
double support_cutoff(const PsdModel& model);

double peak_density(const PsdModel& model);

// Numerical integral of the density over all frequencies (adaptive Simpson,
// abs tol 1e-9 * sigma_x2); equals sigma_x2 within 1e-6 relative.
double variance(const PsdModel& model);

// sum_k S_x(f - k f_s) truncated to replicas with |f - k f_s| <= f_cut.
double aliased_sum(const PsdModel& model, double f, double f_s);
double aliased_sum(const PsdModel& model, double f, double f_s, double f_cut);

// Support edge for compactly supported kinds; nullopt for Gaussian kinds and
// tables that do not end at zero density.
std::optional<double> bandlimit(const PsdModel& model);

// Integration breakpoints (support edges, table knots, Gaussian modes) of
// the replica S_x(f - k f_s), intersected with [lo, hi]. Used to pre-split
// quadrature intervals at integrand kinks.
void replica_breakpoints(const PsdModel& model, double f_s, double lo,
                         double hi, std::vector<double>& out);

}  // namespace esampling
