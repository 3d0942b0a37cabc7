#pragma once

namespace esampling {

// SAR ADC circuit constants. Units: capacitances [F], resistances [ohm],
// voltages [V], times [s]; g, a_k, k, alpha_tau dimensionless.
struct AdcCircuitParams {
  int n = 8;               // resolution [bits]
  double c_u = 0.0;        // DAC unit capacitance
  double c_c = 0.0;        // comparator load capacitance
  double c_s = 0.0;        // SAR flip-flop input capacitance
  double g = 0.0;          // SAR logic activity, in [0, 1]
  double a_k = 0.0;        // comparator regenerative gain
  double v_e = 0.0;        // drain-current / transconductance ratio
  double r_on = 0.0;       // sampling switch on-resistance (0 = unspecified)
  double r_q = 0.0;        // binary-scale switch resistance (0 = unspecified)
  double alpha_tau = 0.0;  // settling time constants
  double v_ref = 0.0;      // reference / supply voltage
  double k = 0.0;          // overload headroom, v_ref = k * sigma_x, k > 1
  double t_aq = 0.0;       // acquisition time override (0 = derive from r_on)

  double hold_cap() const;   // C_h = 2^(n-1) c_u
  double sigma_x() const { return v_ref / k; }
  double sigma_x2() const;
};

void validate(const AdcCircuitParams& p);

enum class EtaMode { kFixed, kFromRc };

struct HarvesterParams {
  double r_h = 0.0;    // harvesting path resistance [ohm]
  double c_eh = 0.0;   // harvesting capacitor [F]
  EtaMode eta_mode = EtaMode::kFixed;
  double eta = 0.7;    // fixed-mode efficiency, in [0, 1]
  int transfer_period_samples = 500;
  double transfer_dead_time = 0.0;  // [s], harvesting pause after a transfer
  bool diode_ideal = false;         // if set, capacitor only charges (never discharges)

  // Scalar efficiency used by the energy formulas: the fixed value, or the
  // RC estimate at hold time t_h.
  double efficiency(double t_h) const;
};

void validate(const HarvesterParams& h);

struct TimingPlan {
  double t_aq = 0.0;  // acquisition time [s]
  double t_h = 0.0;   // hold time [s]
  double t_s = 0.0;   // sampling period, t_aq + t_h
  double f_s = 0.0;   // 1 / t_s [Hz]

  static TimingPlan from_hold(double t_aq, double t_h);
  static TimingPlan from_rate(double t_aq, double f_s);
};

// Checks t_h against the circuit's conversion-settling bound
// n alpha_tau R_q C_h (skipped when r_q is unspecified).
void validate_against(const TimingPlan& plan, const AdcCircuitParams& p);

// Per-sample energy ledger of the hold phase, E_hold = a1 V_ref + a2 V_ref^2.
struct EnergyBudget {
  double e_c = 0.0;     // comparator [J]
  double e_sl = 0.0;    // SAR logic [J]
  double e_dac = 0.0;   // DAC switching average [J]
  double e_hold = 0.0;  // total consumed during hold [J]
  double e_h = 0.0;     // harvested per sample [J] (filled by with_harvest)
  double a1 = 0.0;      // linear coefficient [J/V]
  double a2 = 0.0;      // quadratic coefficient [J/V^2]
  double e_ratio_linear = 0.0;
  double e_ratio_db = 0.0;
};

// T_aq = alpha_tau R_on C_h, or the preset override when r_on is unspecified.
double acquisition_time(const AdcCircuitParams& p);

// Lower bound on the hold time, n alpha_tau R_q C_h.
double min_hold_time(const AdcCircuitParams& p);

// gamma_n = V_e C_c (n ln(1/A_k) + n(n+1)/2 ln2 + n)
double comparator_gamma(const AdcCircuitParams& p);

// E_c = n C_c V_ref^2 + 2 V_ref gamma_n
double comparator_energy(const AdcCircuitParams& p);

// E_sl = 16 n^2 g C_s V_ref^2
double sar_logic_energy(const AdcCircuitParams& p);

// rho_n = sum_{i=1}^{n-1} 2^(n-3-2i) (2^i - 1); average MCS switching energy
// in units of C_u V_ref^2. Requires n >= 2.
double dac_rho(int n);

// Average-DAC-energy grouping. kHoldGrouping (rho_n C_u V_ref^2) is the form
// consistent with the total hold-energy expression and the 17.8 dB anchor;
// kBitScaled keeps the extra factor n of the standalone DAC expression.
enum class DacConvention { kHoldGrouping, kBitScaled };

double dac_energy_avg(const AdcCircuitParams& p,
                      DacConvention convention = DacConvention::kHoldGrouping);

// Fills e_c/e_sl/e_dac/a1/a2 and e_hold = a1 V_ref + a2 V_ref^2.
EnergyBudget hold_energy(const AdcCircuitParams& p);

// E_h = (eta / R_h) T_h sigma_x2
double harvested_energy(double t_h, double eta, double r_h, double sigma_x2);

// eta ~= (R_h C_EH / 2 T_h)(1 - e^(-T_h / R_h C_EH))^2, the efficiency of a
// bare RC harvesting branch emptied once per sample.
double harvester_efficiency_rc(double r_h, double c_eh, double t_h);

struct EnergyRatio {
  double linear = 0.0;
  double db = 0.0;
};

// E_ratio = (eta/R_h)(T_s - T_aq) sigma_x2 / (a2 K^2 sigma_x2 + a1 K sigma_x),
// in dB (10 log10) and linear form. Requires t_s > t_aq.
EnergyRatio energy_ratio(const TimingPlan& plan, const EnergyBudget& budget,
                         double eta, double r_h, double sigma_x2, double k);

// Budget copy with e_h, e_ratio_linear and e_ratio_db filled in.
EnergyBudget with_harvest(EnergyBudget budget, const TimingPlan& plan,
                          double eta, double r_h, double sigma_x2, double k);

}  // namespace esampling
