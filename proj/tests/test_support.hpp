#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "esampling/psd.hpp"
#include "esampling/sim.hpp"

namespace esampling::testing {

struct McNmse {
  double mean = 0.0;
  double std_error = 0.0;
  int realizations = 0;
};

// Time-domain NMSE oracle: synthesize shaped Gaussian noise on a fine grid,
// decimate to the sampling rate, reconstruct with the optimal filter, and
// measure the empirical error energy ratio. Independent of the aliasing-sum
// quadrature that nmse() evaluates.
inline McNmse mc_nmse(const PsdModel& model, double f_s, int realizations,
                      std::size_t n_samples = 256, std::uint64_t seed_base = 1000) {
  const double cut = support_cutoff(model);
  // fine rate >= 32x the signal Nyquist band and the PSD support
  double need = std::max(64.0 * (0.5 * f_s), 2.2 * cut);
  need = std::max(need, 64.0 * cut / 2.0);
  std::size_t os = 1;
  while (static_cast<double>(os) * f_s < 2.0 * need) os <<= 1;
  const std::size_t m = n_samples * os;

  double sum = 0.0, sum_sq = 0.0;
  for (int r = 0; r < realizations; ++r) {
    const auto fine = synth_shaped_gaussian(model, static_cast<double>(os) * f_s, m,
                                            seed_base + static_cast<std::uint64_t>(r));
    std::vector<double> samples(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) samples[k] = fine[k * os];
    const auto rec = reconstruct(samples, f_s, static_cast<int>(os), &model);
    double err = 0.0, sig = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = fine[i] - rec[i];
      err += d * d;
      sig += fine[i] * fine[i];
    }
    const double zeta_r = sig > 0.0 ? err / sig : 0.0;
    sum += zeta_r;
    sum_sq += zeta_r * zeta_r;
  }
  McNmse out;
  out.realizations = realizations;
  out.mean = sum / realizations;
  const double var = (sum_sq - sum * sum / realizations) / (realizations - 1);
  out.std_error = std::sqrt(std::max(var, 0.0) / realizations);
  return out;
}

}  // namespace esampling::testing
