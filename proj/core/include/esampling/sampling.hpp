#pragma once

#include "esampling/psd.hpp"

namespace esampling {

struct NmseResult {
  double f_s = 0.0;               // [Hz]
  double zeta = 0.0;              // sampling NMSE, in [0, 1]
  double quantization_zeta = 0.0; // 10^(-0.6 n); reported separately, never summed
};

// Minimal linear-reconstruction NMSE of uniform sampling at rate f_s:
//   zeta = 1 - (1/sigma_x2) * integral over [-f_s/2, f_s/2] of
//          (sum_k S^2(f - k f_s)) / (sum_k S(f - k f_s)) df
// with 0/0 integrand points contributing 0. Clamped to [0, 1].
double nmse(const PsdModel& model, double f_s);

// Closed form for the flat PSD: max(0, 1 - f_s / (2 f_m)).
double nmse_flat_closed_form(double f_m, double f_s);

// Optimal reconstruction filter gain S(f) / sum_k S(f - k f_s), in [0, 1];
// 0 where the aliased sum vanishes.
double reconstruction_filter_response(const PsdModel& model, double f_s, double f);

// Quantization NMSE floor 10^(-0.6 n) (6 dB per bit rule).
double quantization_nmse(int n_bits);

NmseResult nmse_result(const PsdModel& model, double f_s, int n_bits);

}  // namespace esampling
