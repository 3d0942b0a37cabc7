#include "esampling/sim.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "esampling/fft.hpp"
#include "esampling/sampling.hpp"

namespace esampling {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Deterministic standard normals: mt19937_64 + Box-Muller, so traces are
// bit-identical across standard libraries.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

 private:
  double uniform_open() {
    // (0, 1]: avoids log(0)
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  }
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Input signal evaluated at arbitrary simulation times.
class SignalSource {
 public:
  SignalSource(const SimConfig& cfg) {
    if (const auto* sin_in = std::get_if<SinusoidInput>(&cfg.input)) {
      sinusoid_ = *sin_in;
      const double lo = sin_in->offset_v - std::abs(sin_in->amplitude_v);
      const double hi = sin_in->offset_v + std::abs(sin_in->amplitude_v);
      if (lo < 0.0 || hi > cfg.circuit.v_ref)
        throw std::invalid_argument("simulate: sinusoid exceeds [0, V_ref]");
      is_sinusoid_ = true;
      return;
    }
    const auto& gauss = std::get<ShapedGaussianInput>(cfg.input);
    offset_ = 0.5 * cfg.circuit.v_ref;
    const double f_s = cfg.plan.f_s;
    const double cut = support_cutoff(gauss.model);
    double oversample = std::max({32.0, 2.2 * cut / f_s,
                                  2.0 * static_cast<double>(cfg.hold_substeps)});
    const std::size_t os = next_pow2(static_cast<std::size_t>(std::ceil(oversample)));
    f_fine_ = static_cast<double>(os) * f_s;
    const std::size_t m = next_pow2(static_cast<std::size_t>(cfg.num_samples) * os);
    grid_ = synth_shaped_gaussian(gauss.model, f_fine_, m, gauss.seed);
  }

  double operator()(double t) const {
    if (is_sinusoid_) {
      return sinusoid_.offset_v +
             sinusoid_.amplitude_v * std::sin(kTwoPi * sinusoid_.freq_hz * t);
    }
    const double pos = t * f_fine_;
    const std::size_t m = grid_.size();
    const auto i0 = static_cast<std::size_t>(pos);
    const double w = pos - static_cast<double>(i0);
    const double a = grid_[i0 % m];
    const double b = grid_[(i0 + 1) % m];
    return offset_ + a + w * (b - a);
  }

 private:
  bool is_sinusoid_ = false;
  SinusoidInput sinusoid_;
  double offset_ = 0.0;
  double f_fine_ = 0.0;
  std::vector<double> grid_;
};

}  // namespace

SarResult sar_convert(double v, const AdcCircuitParams& p) {
  const int n = p.n;
  const double v_ref = p.v_ref;
  SarResult out;
  if (v < 0.0 || v > v_ref) {
    out.overload = true;
    v = std::clamp(v, 0.0, v_ref);
  }

  // MCS DAC array: n-1 binary-weighted caps plus a unit dummy, all bottom
  // plates at V_cm. Event k switches cap k to ground (bit 1) or V_ref
  // (bit 0); every cap exchanges charge with its source as the top plate
  // moves, and the ledger nets V_src * dQ over all of them.
  std::vector<double> caps(n);
  for (int i = 0; i < n - 1; ++i) caps[i] = std::ldexp(p.c_u, n - 2 - i);
  caps[n - 1] = p.c_u;
  const double c_tot = std::ldexp(p.c_u, n - 1);
  const double v_cm = 0.5 * v_ref;
  std::vector<double> bottoms(n, v_cm);

  double v_top = v - v_cm;
  double energy = 0.0;
  int code = 0;
  for (int bit = n - 1; bit >= 0; --bit) {
    const int b = v_top >= 0.0 ? 1 : 0;
    code |= b << bit;
    if (bit == 0) break;
    const int idx = n - 1 - bit;
    const double new_bottom = b ? 0.0 : v_ref;
    const double dvb = new_bottom - bottoms[idx];
    const double dv_top = dvb * caps[idx] / c_tot;
    for (int j = 0; j < n; ++j) {
      const double dq = caps[j] * ((j == idx ? dvb : 0.0) - dv_top);
      const double v_src = j == idx ? new_bottom : bottoms[j];
      energy += v_src * dq;
    }
    bottoms[idx] = new_bottom;
    v_top += dv_top;
  }
  // the binary search must agree with direct index computation
  assert(code == std::min((1 << n) - 1,
                          static_cast<int>(std::floor(v / v_ref * std::ldexp(1.0, n)))));
  out.code = code;
  out.dac_energy = energy;
  return out;
}

SimTrace run_simulation(const SimConfig& cfg) {
  validate(cfg.circuit);
  validate(cfg.harvester);
  if (cfg.num_samples < 1) throw std::invalid_argument("simulate: num_samples must be >= 1");
  if (cfg.hold_substeps < 1) throw std::invalid_argument("simulate: hold_substeps must be >= 1");
  if (!(cfg.plan.t_h > 0.0)) throw std::invalid_argument("simulate: plan needs t_h > 0");

  const SignalSource signal(cfg);
  const auto& h = cfg.harvester;
  const double e_fixed = comparator_energy(cfg.circuit) + sar_logic_energy(cfg.circuit);
  const double dt = cfg.plan.t_h / cfg.hold_substeps;
  const double decay = std::exp(-dt / (h.r_h * h.c_eh));

  SimTrace trace;
  trace.t_s = cfg.plan.t_s;
  trace.n_bits = cfg.circuit.n;
  trace.v_ref = cfg.circuit.v_ref;
  trace.per_sample_fixed_energy = e_fixed;
  trace.codes.reserve(cfg.num_samples);
  trace.held_voltages.reserve(cfg.num_samples);
  trace.per_sample_dac_energy.reserve(cfg.num_samples);
  trace.timeline.reserve(static_cast<std::size_t>(cfg.num_samples) *
                         (cfg.hold_substeps + 1));

  double v_eh = 0.0;
  double e_consumed = 0.0;
  double e_harvested = 0.0;
  double dead_until = -1.0;

  for (int k = 0; k < cfg.num_samples; ++k) {
    const double t_acq_end = k * cfg.plan.t_s + cfg.plan.t_aq;
    const double held = signal(t_acq_end);  // ideal track, settled by construction
    const SarResult sar = sar_convert(held, cfg.circuit);
    if (sar.overload) ++trace.overload_count;
    trace.codes.push_back(sar.code);
    trace.held_voltages.push_back(held);
    trace.per_sample_dac_energy.push_back(sar.dac_energy);

    for (int i = 0; i < cfg.hold_substeps; ++i) {
      const double t_start = t_acq_end + i * dt;
      if (t_start >= dead_until) {
        const double x_mid = signal(t_start + 0.5 * dt);
        if (!h.diode_ideal || x_mid > v_eh) {
          v_eh = x_mid + (v_eh - x_mid) * decay;
        }
      }
      trace.timeline.push_back({t_start + dt, v_eh, e_consumed, e_harvested});
    }

    e_consumed += e_fixed + sar.dac_energy;
    const double t_end = (k + 1) * cfg.plan.t_s;
    if ((k + 1) % h.transfer_period_samples == 0) {
      e_harvested += 0.5 * h.c_eh * v_eh * v_eh;
      v_eh = 0.0;
      dead_until = t_end + h.transfer_dead_time;
    }
    trace.timeline.push_back({t_end, v_eh, e_consumed, e_harvested});
  }
  return trace;
}

std::vector<double> consumed_energy_ledger(const SimTrace& trace) {
  std::vector<double> out;
  out.reserve(trace.codes.size());
  double total = 0.0;
  for (double dac : trace.per_sample_dac_energy) {
    total += trace.per_sample_fixed_energy + dac;
    out.push_back(total);
  }
  return out;
}

double average_consumed_per_sample(const SimTrace& trace) {
  if (trace.codes.empty()) return 0.0;
  const auto ledger = consumed_energy_ledger(trace);
  return ledger.back() / static_cast<double>(ledger.size());
}

std::vector<double> decode_codes(const SimTrace& trace) {
  const double lsb = trace.v_ref / std::ldexp(1.0, trace.n_bits);
  std::vector<double> out;
  out.reserve(trace.codes.size());
  for (int code : trace.codes) out.push_back((code + 0.5) * lsb);
  return out;
}

std::vector<double> reconstruct(std::span<const double> samples, double f_s,
                                int oversample, const PsdModel* optimal_model) {
  const std::size_t n = samples.size();
  if (n == 0) return {};
  if (!is_pow2(n) || oversample < 1 || !is_pow2(static_cast<std::size_t>(oversample)))
    throw std::invalid_argument("reconstruct: sizes must be powers of two");

  std::vector<std::complex<double>> spec(samples.begin(), samples.end());
  fft(spec);

  const std::size_t m = n * static_cast<std::size_t>(oversample);
  const auto gain_at = [&](double f) {
    if (optimal_model) return reconstruction_filter_response(*optimal_model, f_s, f);
    const double af = std::abs(f);
    if (af < 0.5 * f_s) return 1.0;
    return af == 0.5 * f_s ? 0.5 : 0.0;
  };

  std::vector<std::complex<double>> fine(m, {0.0, 0.0});
  const long half = static_cast<long>(m) / 2;
  for (long q = -half; q < half; ++q) {
    const double f_q = static_cast<double>(q) * f_s / static_cast<double>(n);
    const double gain = gain_at(f_q);
    if (gain == 0.0) continue;
    const std::size_t dst = static_cast<std::size_t>((q % static_cast<long>(m) + m) % m);
    const std::size_t src = static_cast<std::size_t>((q % static_cast<long>(n) + n) % n);
    fine[dst] = gain * spec[src];
  }
  fine[m / 2] = 0.0;  // unpaired fine-grid Nyquist bin

  ifft(fine);
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = fine[i].real() * oversample;
  }
  return out;
}

SndrResult sndr_fft(std::span<const double> signal, double f_s, int n_fft,
                    double full_scale_amplitude, bool hann_window) {
  if (n_fft < 4 || !is_pow2(static_cast<std::size_t>(n_fft)))
    throw std::invalid_argument("sndr_fft: n_fft must be a power of two >= 4");
  if (signal.size() < static_cast<std::size_t>(n_fft))
    throw std::invalid_argument("sndr_fft: need at least n_fft samples");

  std::vector<std::complex<double>> a(n_fft);
  double coherent_gain = 1.0;
  if (hann_window) {
    double wsum = 0.0;
    for (int m = 0; m < n_fft; ++m) {
      const double w = 0.5 * (1.0 - std::cos(kTwoPi * m / n_fft));
      a[m] = signal[m] * w;
      wsum += w;
    }
    coherent_gain = wsum / n_fft;
  } else {
    for (int m = 0; m < n_fft; ++m) a[m] = signal[m];
  }
  fft(a);

  const int half = n_fft / 2;
  std::vector<double> power(half + 1);
  for (int k = 0; k <= half; ++k) {
    const double mag2 = std::norm(a[k]);
    power[k] = (k == 0 || k == half) ? mag2 : 2.0 * mag2;
  }

  int sig_bin = 1;
  for (int k = 2; k < half; ++k) {
    if (power[k] > power[sig_bin]) sig_bin = k;
  }
  double p_nd = 0.0;
  for (int k = 1; k <= half; ++k) {
    if (k != sig_bin) p_nd += power[k];
  }

  SndrResult r;
  r.signal_bin = sig_bin;
  r.signal_freq_hz = static_cast<double>(sig_bin) * f_s / n_fft;
  r.sndr_db = 10.0 * std::log10(power[sig_bin] / std::max(p_nd, 1e-300));
  r.noise_floor_gap_db = r.sndr_db + 10.0 * std::log10(n_fft / 2.0);
  r.enob = (r.sndr_db - 1.76) / 6.02;

  const double fs_amp = full_scale_amplitude * n_fft / 2.0 * coherent_gain;
  r.freq_hz.resize(half + 1);
  r.magnitude_dbfs.resize(half + 1);
  for (int k = 0; k <= half; ++k) {
    r.freq_hz[k] = static_cast<double>(k) * f_s / n_fft;
    const double amp = std::sqrt(power[k] / 2.0);
    r.magnitude_dbfs[k] = 20.0 * std::log10(std::max(amp / fs_amp, 1e-300));
  }
  return r;
}

SndrResult sndr_fft(const SimTrace& trace, int n_fft, bool hann_window) {
  const auto decoded = decode_codes(trace);
  return sndr_fft(decoded, 1.0 / trace.t_s, n_fft, 0.5 * trace.v_ref, hann_window);
}

double coherent_frequency(double f_target, double f_s, int n_fft) {
  if (!(f_s > 0.0) || n_fft < 4)
    throw std::invalid_argument("coherent_frequency: bad f_s or n_fft");
  long j = std::lround(f_target / f_s * n_fft);
  if (j % 2 == 0) {
    const double up = std::abs((j + 1) * f_s / n_fft - f_target);
    const double dn = std::abs((j - 1) * f_s / n_fft - f_target);
    j += (j <= 1 || up <= dn) ? 1 : -1;
  }
  j = std::clamp<long>(j, 1, n_fft / 2 - 1);
  return static_cast<double>(j) * f_s / n_fft;
}

std::vector<double> synth_shaped_gaussian(const PsdModel& model, double f_fine,
                                          std::size_t m, std::uint64_t seed) {
  if (!is_pow2(m)) throw std::invalid_argument("synth: m must be a power of two");
  if (!(f_fine > 0.0)) throw std::invalid_argument("synth: f_fine must be positive");

  GaussianRng rng(seed);
  std::vector<std::complex<double>> a(m);
  for (auto& z : a) z = rng();
  fft(a);

  // Shape by sqrt(S_x(f) f_fine): white spectrum E|W|^2 = m turns into
  // E x^2 = sum_q S(f_q) (f_fine / m) ~= sigma_x2.
  const double df = f_fine / static_cast<double>(m);
  for (std::size_t q = 0; q < m; ++q) {
    const double f_q = (q <= m / 2 ? static_cast<double>(q)
                                   : static_cast<double>(q) - static_cast<double>(m)) *
                       df;
    double s;
    try {
      s = psd_eval(model, f_q);
    } catch (const std::domain_error&) {
      s = 0.0;  // non-compact table queried past its domain: nothing there
    }
    a[q] *= std::sqrt(s * f_fine);
  }
  ifft(a);

  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = a[i].real();
  return out;
}

}  // namespace esampling
