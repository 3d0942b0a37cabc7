#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "esampling/energy.hpp"
#include "esampling/psd.hpp"

namespace esampling {

struct SinusoidInput {
  double freq_hz = 0.0;
  double offset_v = 0.0;
  double amplitude_v = 0.0;
};

// Zero-mean stationary noise with the given PSD, riding at the mid-scale
// operating point V_ref/2. Samples outside [0, V_ref] clamp in the quantizer
// and bump the overload counter; the harvester sees the unclamped signal.
struct ShapedGaussianInput {
  PsdModel model;
  std::uint64_t seed = 1;
};

using InputSignal = std::variant<SinusoidInput, ShapedGaussianInput>;

struct SimConfig {
  AdcCircuitParams circuit;
  HarvesterParams harvester;
  TimingPlan plan;
  InputSignal input;
  int num_samples = 0;
  int hold_substeps = 16;
};

struct SarResult {
  int code = 0;
  double dac_energy = 0.0;  // charge-redistribution energy of this code's path [J]
  bool overload = false;
};

// One SAR conversion: binary search against the MCS capacitor DAC, bottom
// plates starting at V_cm = V_ref/2. The code equals the uniform quantization
// index floor(v 2^n / V_ref) clamped to [0, 2^n - 1]; dac_energy is the net
// V_src * dQ drawn from the V_ref / V_cm / ground sources over the n-1
// switching events of the conversion.
SarResult sar_convert(double v, const AdcCircuitParams& p);

struct TracePoint {
  double time_s = 0.0;
  double v_eh = 0.0;         // harvesting capacitor voltage [V]
  double e_consumed = 0.0;   // cumulative [J]
  double e_harvested = 0.0;  // cumulative transferred [J]
};

struct SimTrace {
  double t_s = 0.0;
  int n_bits = 0;
  double v_ref = 0.0;
  std::vector<int> codes;
  std::vector<double> held_voltages;
  std::vector<double> per_sample_dac_energy;
  double per_sample_fixed_energy = 0.0;  // E_c + E_sl, charged every sample
  std::vector<TracePoint> timeline;      // substep resolution
  int overload_count = 0;
};

SimTrace run_simulation(const SimConfig& cfg);

// Cumulative consumed energy at the end of each sample.
std::vector<double> consumed_energy_ledger(const SimTrace& trace);
double average_consumed_per_sample(const SimTrace& trace);

// Mid-rise decode of the trace codes, (code + 0.5) * V_ref / 2^n.
std::vector<double> decode_codes(const SimTrace& trace);

// Frequency-domain reconstruction of uniformly spaced samples onto a grid
// oversampled by `oversample` (both sizes powers of two). With a model the
// optimal filter response is applied; with nullptr an ideal lowpass at f_s/2.
std::vector<double> reconstruct(std::span<const double> samples, double f_s,
                                int oversample, const PsdModel* optimal_model);

struct SndrResult {
  double sndr_db = 0.0;
  double noise_floor_gap_db = 0.0;  // sndr_db + 10 log10(n_fft / 2)
  double enob = 0.0;
  int signal_bin = 0;
  double signal_freq_hz = 0.0;
  std::vector<double> freq_hz;
  std::vector<double> magnitude_dbfs;
};

// SNDR over the first Nyquist zone, excluding DC and the signal bin.
// Assumes coherent sampling unless hann_window is set.
SndrResult sndr_fft(std::span<const double> signal, double f_s, int n_fft,
                    double full_scale_amplitude, bool hann_window = false);
SndrResult sndr_fft(const SimTrace& trace, int n_fft, bool hann_window = false);

// Nearest coherent FFT bin frequency to f_target (odd bin index preferred so
// quantization exercises all code levels).
double coherent_frequency(double f_target, double f_s, int n_fft);

// Circularly stationary zero-mean Gaussian sequence of length m (power of
// two) at rate f_fine, shaped in the frequency domain by sqrt(S_x f_fine) so
// the sample variance equals the model's sigma_x2.
std::vector<double> synth_shaped_gaussian(const PsdModel& model, double f_fine,
                                          std::size_t m, std::uint64_t seed);

}  // namespace esampling
