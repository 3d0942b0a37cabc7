#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace esampling {

bool is_pow2(std::size_t n);

// In-place iterative radix-2 transform; size must be a power of two.
// Forward: X[q] = sum_m x[m] e^(-2 pi i q m / N). Inverse includes the 1/N.
void fft(std::vector<std::complex<double>>& a);
void ifft(std::vector<std::complex<double>>& a);

std::vector<std::complex<double>> fft_real(const std::vector<double>& x);

}  // namespace esampling
