#pragma once

#include <span>
#include <vector>

#include "esampling/energy.hpp"
#include "esampling/psd.hpp"

namespace esampling {

struct TradeoffPoint {
  double f_s = 0.0;        // [Hz]
  double t_s = 0.0;        // [s]
  double zeta = 0.0;       // sampling NMSE at f_s
  double e_ratio_db = 0.0;
  double e_h = 0.0;        // harvested per sample [J]
  double e_hold = 0.0;     // consumed per sample [J]
};

struct TradeoffConfig {
  double t_s_ceiling = 0.0;        // [s]; 0 = default (1e4 / (2 f_m), or 1e4 t_aq
                                   // for unbounded-support PSDs)
  double bisect_rel_tol = 1e-9;    // relative tolerance on t_s
  int bisect_max_iters = 200;
};

// Minimal NMSE under the energy-ratio constraint E_ratio >= delta (linear).
// Fixed-eta harvesters use the closed form T_h(delta) = delta R_h E_hold /
// (eta sigma_x2); RC-mode harvesters solve the saturating E_h(T_h) = delta
// E_hold numerically (infeasible past C_EH sigma_x2 / 2).
TradeoffPoint min_nmse_under_energy(const PsdModel& model,
                                    const AdcCircuitParams& circuit,
                                    const HarvesterParams& harvester,
                                    double delta_linear,
                                    const TradeoffConfig& cfg = {});

// Maximal energy ratio under the fidelity constraint zeta <= epsilon:
// the largest t_s with zeta(t_s) <= epsilon, found analytically at
// 1/(2 f_m) for bandlimited models with epsilon = 0, otherwise by growing
// a bracket geometrically from t_aq and bisecting on the zeta crossing.
// Throws infeasible_error when even the fastest rate misses epsilon;
// returns the configured t_s ceiling when no crossing exists below it.
TradeoffPoint max_ratio_under_fidelity(const PsdModel& model,
                                       const AdcCircuitParams& circuit,
                                       const HarvesterParams& harvester,
                                       double epsilon,
                                       const TradeoffConfig& cfg = {});

// One consistent point per grid entry; the grid must be strictly decreasing
// in f_s with every entry below 1/t_aq.
std::vector<TradeoffPoint> tradeoff_curve(const PsdModel& model,
                                          const AdcCircuitParams& circuit,
                                          const HarvesterParams& harvester,
                                          std::span<const double> f_s_grid);

// Energy ratio when sampling a bandlimited model at exactly f_s = 2 f_m.
double nyquist_energy_ratio_db(const PsdModel& model,
                               const AdcCircuitParams& circuit,
                               const HarvesterParams& harvester);

// Shared helper: fully evaluated tradeoff point at a given sampling period.
TradeoffPoint evaluate_tradeoff_point(const PsdModel& model,
                                      const AdcCircuitParams& circuit,
                                      const HarvesterParams& harvester,
                                      double t_s);

}  // namespace esampling
