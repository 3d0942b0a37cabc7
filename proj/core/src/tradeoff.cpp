#include "esampling/tradeoff.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "esampling/errors.hpp"
#include "esampling/sampling.hpp"

namespace esampling {

namespace {

double default_ceiling(const PsdModel& model, double t_aq, const TradeoffConfig& cfg) {
  if (cfg.t_s_ceiling > 0.0) return cfg.t_s_ceiling;
  const auto bl = bandlimit(model);
  return bl ? 1e4 / (2.0 * *bl) : 1e4 * t_aq;
}

// A PSD and a circuit only meet consistently when the model's power matches
// the (V_ref / K)^2 the energy formulas assume.
void check_sigma_consistency(const PsdModel& model, const AdcCircuitParams& circuit) {
  const double expected = circuit.sigma_x2();
  if (std::abs(model.sigma_x2 - expected) > 1e-9 * expected) {
    throw std::invalid_argument(
        "tradeoff: PsdModel.sigma_x2 does not equal (V_ref/K)^2 of the circuit");
  }
}

}  // namespace

TradeoffPoint evaluate_tradeoff_point(const PsdModel& model,
                                      const AdcCircuitParams& circuit,
                                      const HarvesterParams& harvester,
                                      double t_s) {
  check_sigma_consistency(model, circuit);
  const double t_aq = acquisition_time(circuit);
  const TimingPlan plan = TimingPlan::from_hold(t_aq, t_s - t_aq);
  const EnergyBudget budget = hold_energy(circuit);
  TradeoffPoint pt;
  pt.f_s = plan.f_s;
  pt.t_s = plan.t_s;
  pt.zeta = nmse(model, plan.f_s);
  pt.e_hold = budget.e_hold;
  if (plan.t_h > 0.0) {
    const double eta = harvester.efficiency(plan.t_h);
    const EnergyRatio ratio =
        energy_ratio(plan, budget, eta, harvester.r_h, circuit.sigma_x2(), circuit.k);
    pt.e_ratio_db = ratio.db;
    pt.e_h = harvested_energy(plan.t_h, eta, harvester.r_h, circuit.sigma_x2());
  } else {
    // zero hold time: nothing harvested
    pt.e_ratio_db = -std::numeric_limits<double>::infinity();
    pt.e_h = 0.0;
  }
  return pt;
}

TradeoffPoint min_nmse_under_energy(const PsdModel& model,
                                    const AdcCircuitParams& circuit,
                                    const HarvesterParams& harvester,
                                    double delta_linear,
                                    const TradeoffConfig& /*cfg*/) {
  if (delta_linear < 0.0)
    throw std::invalid_argument("min_nmse_under_energy: delta must be nonnegative");
  validate(circuit);
  validate(harvester);

  const double t_aq = acquisition_time(circuit);
  const double sigma_x2 = circuit.sigma_x2();
  const EnergyBudget budget = hold_energy(circuit);

  double t_h = 0.0;
  if (harvester.eta_mode == EtaMode::kFixed) {
    // closed form: the hold time at which E_h = delta * E_hold
    t_h = delta_linear * harvester.r_h / (harvester.eta * sigma_x2) * budget.e_hold;
  } else if (delta_linear > 0.0) {
    // E_h(t_h) = (C_EH/2)(1 - e^(-t_h / R_h C_EH))^2 sigma_x2, monotone and
    // saturating; invert for E_h = delta * E_hold.
    const double target = delta_linear * budget.e_hold;
    const double e_max = 0.5 * harvester.c_eh * sigma_x2;
    if (target >= e_max) {
      throw infeasible_error(
          "min_nmse_under_energy: RC harvester saturates below the requested ratio");
    }
    const double rc = harvester.r_h * harvester.c_eh;
    t_h = -rc * std::log(1.0 - std::sqrt(target / e_max));
  }

  return evaluate_tradeoff_point(model, circuit, harvester, t_aq + t_h);
}

TradeoffPoint max_ratio_under_fidelity(const PsdModel& model,
                                       const AdcCircuitParams& circuit,
                                       const HarvesterParams& harvester,
                                       double epsilon,
                                       const TradeoffConfig& cfg) {
  if (epsilon < 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("max_ratio_under_fidelity: epsilon must be in [0, 1)");
  validate(circuit);
  validate(harvester);

  const double t_aq = acquisition_time(circuit);
  const double ceiling = default_ceiling(model, t_aq, cfg);

  if (epsilon == 0.0) {
    if (const auto bl = bandlimit(model)) {
      const double t_nyq = 1.0 / (2.0 * *bl);
      if (t_nyq <= t_aq) {
        throw infeasible_error(
            "max_ratio_under_fidelity: Nyquist interval does not exceed t_aq");
      }
      return evaluate_tradeoff_point(model, circuit, harvester, t_nyq);
    }
  }

  const auto zeta_at = [&](double t_s) { return nmse(model, 1.0 / t_s); };

  double t_lo = t_aq * (1.0 + 1e-9);
  if (zeta_at(t_lo) > epsilon) {
    throw infeasible_error(
        "max_ratio_under_fidelity: fidelity bound unreachable at the fastest feasible rate");
  }

  // Grow the bracket geometrically until zeta crosses epsilon or the ceiling.
  double t_hi = t_lo;
  bool crossed = false;
  while (t_hi < ceiling) {
    t_hi = std::min(2.0 * t_hi, ceiling);
    if (zeta_at(t_hi) > epsilon) {
      crossed = true;
      break;
    }
    t_lo = t_hi;
  }
  if (!crossed) {
    return evaluate_tradeoff_point(model, circuit, harvester, ceiling);
  }

  // Bisect the crossing; the feasible end converges to the largest t_s with
  // zeta <= epsilon in this segment (upper edge of a plateau included).
  for (int i = 0; i < cfg.bisect_max_iters; ++i) {
    if (t_hi - t_lo <= cfg.bisect_rel_tol * t_lo) break;
    const double mid = 0.5 * (t_lo + t_hi);
    if (zeta_at(mid) <= epsilon) {
      t_lo = mid;
    } else {
      t_hi = mid;
    }
  }
  return evaluate_tradeoff_point(model, circuit, harvester, t_lo);
}

std::vector<TradeoffPoint> tradeoff_curve(const PsdModel& model,
                                          const AdcCircuitParams& circuit,
                                          const HarvesterParams& harvester,
                                          std::span<const double> f_s_grid) {
  validate(circuit);
  validate(harvester);
  const double t_aq = acquisition_time(circuit);
  const double f_max = 1.0 / t_aq;
  for (std::size_t i = 0; i < f_s_grid.size(); ++i) {
    if (!(f_s_grid[i] > 0.0) || f_s_grid[i] >= f_max)
      throw std::invalid_argument("tradeoff_curve: grid entry not in (0, 1/t_aq)");
    if (i > 0 && !(f_s_grid[i] < f_s_grid[i - 1]))
      throw std::invalid_argument("tradeoff_curve: grid must be strictly decreasing");
  }
  std::vector<TradeoffPoint> curve;
  curve.reserve(f_s_grid.size());
  for (double f_s : f_s_grid) {
    auto pt = evaluate_tradeoff_point(model, circuit, harvester, 1.0 / f_s);
    pt.f_s = f_s;  // keep the exact grid value instead of 1/(1/f_s)
    curve.push_back(pt);
  }
  return curve;
}

double nyquist_energy_ratio_db(const PsdModel& model,
                               const AdcCircuitParams& circuit,
                               const HarvesterParams& harvester) {
  validate(circuit);
  validate(harvester);
  const auto bl = bandlimit(model);
  if (!bl) {
    throw std::invalid_argument("nyquist_energy_ratio: model has no bandlimit");
  }
  const double t_aq = acquisition_time(circuit);
  const double t_nyq = 1.0 / (2.0 * *bl);
  if (t_nyq < t_aq) {
    throw infeasible_error("nyquist_energy_ratio: Nyquist rate faster than acquisition allows");
  }
  // t_nyq == t_aq leaves zero hold time and reports -inf dB
  return evaluate_tradeoff_point(model, circuit, harvester, t_nyq).e_ratio_db;
}

}  // namespace esampling
