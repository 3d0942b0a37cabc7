#include "esampling/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace esampling {

double AdcCircuitParams::hold_cap() const {
  return std::ldexp(c_u, n - 1);  // 2^(n-1) c_u
}

double AdcCircuitParams::sigma_x2() const {
  const double s = sigma_x();
  return s * s;
}

void validate(const AdcCircuitParams& p) {
  if (p.n < 1) throw std::invalid_argument("circuit: n must be >= 1");
  if (!(p.c_u > 0.0) || !(p.c_c > 0.0) || !(p.c_s > 0.0))
    throw std::invalid_argument("circuit: capacitances must be positive");
  if (p.g < 0.0 || p.g > 1.0) throw std::invalid_argument("circuit: g must be in [0, 1]");
  if (!(p.a_k > 0.0)) throw std::invalid_argument("circuit: a_k must be positive");
  if (!(p.v_e > 0.0)) throw std::invalid_argument("circuit: v_e must be positive");
  if (p.r_on < 0.0 || p.r_q < 0.0)
    throw std::invalid_argument("circuit: resistances must be nonnegative");
  if (!(p.alpha_tau > 0.0)) throw std::invalid_argument("circuit: alpha_tau must be positive");
  if (!(p.v_ref > 0.0)) throw std::invalid_argument("circuit: v_ref must be positive");
  if (!(p.k > 1.0)) throw std::invalid_argument("circuit: k must exceed 1");
  if (p.r_on == 0.0 && p.t_aq == 0.0)
    throw std::invalid_argument("circuit: need r_on or a t_aq override");
}

double HarvesterParams::efficiency(double t_h) const {
  return eta_mode == EtaMode::kFixed ? eta : harvester_efficiency_rc(r_h, c_eh, t_h);
}

void validate(const HarvesterParams& h) {
  if (!(h.r_h > 0.0) || !(h.c_eh > 0.0))
    throw std::invalid_argument("harvester: r_h and c_eh must be positive");
  if (h.eta_mode == EtaMode::kFixed && (h.eta < 0.0 || h.eta > 1.0))
    throw std::invalid_argument("harvester: fixed eta must be in [0, 1]");
  if (h.transfer_period_samples < 1)
    throw std::invalid_argument("harvester: transfer period must be >= 1 sample");
  if (h.transfer_dead_time < 0.0)
    throw std::invalid_argument("harvester: dead time must be nonnegative");
}

TimingPlan TimingPlan::from_hold(double t_aq, double t_h) {
  if (t_aq < 0.0 || t_h < 0.0) throw std::invalid_argument("timing: negative phase duration");
  TimingPlan plan;
  plan.t_aq = t_aq;
  plan.t_h = t_h;
  plan.t_s = t_aq + t_h;
  plan.f_s = plan.t_s > 0.0 ? 1.0 / plan.t_s : 0.0;
  return plan;
}

TimingPlan TimingPlan::from_rate(double t_aq, double f_s) {
  if (!(f_s > 0.0)) throw std::invalid_argument("timing: f_s must be positive");
  const double t_s = 1.0 / f_s;
  if (t_s <= t_aq) throw std::invalid_argument("timing: 1/f_s must exceed t_aq");
  TimingPlan plan;
  plan.t_aq = t_aq;
  plan.t_s = t_s;
  plan.t_h = t_s - t_aq;
  plan.f_s = f_s;
  return plan;
}

void validate_against(const TimingPlan& plan, const AdcCircuitParams& p) {
  if (std::abs(plan.t_s - (plan.t_aq + plan.t_h)) > 1e-12 * plan.t_s)
    throw std::invalid_argument("timing: t_s != t_aq + t_h");
  if (p.r_q > 0.0 && plan.t_h < min_hold_time(p))
    throw std::invalid_argument("timing: t_h below the n alpha_tau R_q C_h settling bound");
}

double acquisition_time(const AdcCircuitParams& p) {
  if (p.t_aq > 0.0) return p.t_aq;
  return p.alpha_tau * p.r_on * p.hold_cap();
}

double min_hold_time(const AdcCircuitParams& p) {
  return p.n * p.alpha_tau * p.r_q * p.hold_cap();
}

double comparator_gamma(const AdcCircuitParams& p) {
  if (!(p.a_k > 0.0)) throw std::invalid_argument("comparator_gamma: a_k must be positive");
  const double n = p.n;
  return p.v_e * p.c_c *
         (n * std::log(1.0 / p.a_k) + n * (n + 1.0) / 2.0 * std::log(2.0) + n);
}

double comparator_energy(const AdcCircuitParams& p) {
  return p.n * p.c_c * p.v_ref * p.v_ref + 2.0 * p.v_ref * comparator_gamma(p);
}

double sar_logic_energy(const AdcCircuitParams& p) {
  return 16.0 * p.n * p.n * p.g * p.c_s * p.v_ref * p.v_ref;
}

double dac_rho(int n) {
  if (n < 2) throw std::invalid_argument("dac_rho: n must be >= 2");
  double rho = 0.0;
  for (int i = 1; i <= n - 1; ++i) {
    rho += std::ldexp(1.0, n - 3 - 2 * i) * (std::ldexp(1.0, i) - 1.0);
  }
  return rho;
}

double dac_energy_avg(const AdcCircuitParams& p, DacConvention convention) {
  double e = dac_rho(p.n) * p.c_u * p.v_ref * p.v_ref;
  if (convention == DacConvention::kBitScaled) e *= p.n;
  return e;
}

EnergyBudget hold_energy(const AdcCircuitParams& p) {
  EnergyBudget b;
  b.a2 = dac_rho(p.n) * p.c_u + p.n * p.c_c + 16.0 * p.n * p.n * p.c_s * p.g;
  b.a1 = 2.0 * comparator_gamma(p);
  b.e_dac = dac_energy_avg(p);
  b.e_c = comparator_energy(p);
  b.e_sl = sar_logic_energy(p);
  b.e_hold = b.a1 * p.v_ref + b.a2 * p.v_ref * p.v_ref;
  return b;
}

double harvested_energy(double t_h, double eta, double r_h, double sigma_x2) {
  return eta / r_h * t_h * sigma_x2;
}

double harvester_efficiency_rc(double r_h, double c_eh, double t_h) {
  if (!(r_h > 0.0) || !(c_eh > 0.0) || !(t_h > 0.0))
    throw std::invalid_argument("harvester_efficiency_rc: arguments must be positive");
  const double x = r_h * c_eh / t_h;
  const double one_minus = 1.0 - std::exp(-1.0 / x);
  return 0.5 * x * one_minus * one_minus;
}

EnergyRatio energy_ratio(const TimingPlan& plan, const EnergyBudget& budget,
                         double eta, double r_h, double sigma_x2, double k) {
  if (!(plan.t_s > plan.t_aq))
    throw std::invalid_argument("energy_ratio: t_s must exceed t_aq");
  const double sigma_x = std::sqrt(sigma_x2);
  const double consumed = budget.a2 * k * k * sigma_x2 + budget.a1 * k * sigma_x;
  const double harvested = eta / r_h * (plan.t_s - plan.t_aq) * sigma_x2;
  EnergyRatio r;
  r.linear = harvested / consumed;
  r.db = 10.0 * std::log10(r.linear);
  return r;
}

EnergyBudget with_harvest(EnergyBudget budget, const TimingPlan& plan,
                          double eta, double r_h, double sigma_x2, double k) {
  const EnergyRatio r = energy_ratio(plan, budget, eta, r_h, sigma_x2, k);
  budget.e_h = harvested_energy(plan.t_s - plan.t_aq, eta, r_h, sigma_x2);
  budget.e_ratio_linear = r.linear;
  budget.e_ratio_db = r.db;
  return budget;
}

}  // namespace esampling
