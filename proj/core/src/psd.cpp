#include "esampling/psd.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "esampling/quadrature.hpp"

namespace esampling {

namespace {

constexpr double kPeakFalloff = 1e-12;  // replica truncation: density below this x peak is dropped

// x with e^{-x^2/2} = 1e-12, i.e. Gaussian support cutoff in units of sigma.
const double kGaussianCutSigmas = std::sqrt(2.0 * std::log(1.0 / kPeakFalloff));

double gaussian_alpha(const PsdModel& m) {
  return m.sigma_x2 / std::sqrt(2.0 * std::numbers::pi * m.sigma * m.sigma);
}

// Index of the first knot of the trailing zero run, or nullopt if the table
// ends at nonzero density.
std::optional<std::size_t> trailing_zero_start(
    const std::vector<std::pair<double, double>>& table) {
  if (table.empty() || table.back().second != 0.0) return std::nullopt;
  std::size_t i = table.size() - 1;
  while (i > 0 && table[i - 1].second == 0.0) --i;
  return i;
}

double table_eval(const PsdModel& m, double af) {
  const auto& t = m.table;
  if (af > t.back().first) {
    if (trailing_zero_start(t)) return 0.0;
    throw std::domain_error("tabulated PSD queried outside table domain");
  }
  auto it = std::lower_bound(t.begin(), t.end(), af,
                             [](const auto& row, double f) { return row.first < f; });
  if (it == t.begin()) return std::max(0.0, it->second);
  const auto& [f1, d1] = *it;
  const auto& [f0, d0] = *(it - 1);
  const double w = (af - f0) / (f1 - f0);
  return std::max(0.0, d0 + w * (d1 - d0));
}

double table_integral_two_sided(const std::vector<std::pair<double, double>>& t) {
  double half = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    half += 0.5 * (t[i].second + t[i + 1].second) * (t[i + 1].first - t[i].first);
  }
  return 2.0 * half;
}

}  // namespace

PsdModel make_flat_psd(double sigma_x2, double f_m) {
  PsdModel m;
  m.kind = PsdKind::kFlat;
  m.sigma_x2 = sigma_x2;
  m.f_m = f_m;
  validate(m);
  return m;
}

PsdModel make_unimodal_psd(double sigma_x2, double f_m, double sigma) {
  PsdModel m;
  m.kind = PsdKind::kUnimodal;
  m.sigma_x2 = sigma_x2;
  m.f_m = f_m;
  m.sigma = sigma;
  validate(m);
  return m;
}

PsdModel make_multimodal_psd(double sigma_x2, double f_m, double sigma) {
  PsdModel m;
  m.kind = PsdKind::kMultimodal;
  m.sigma_x2 = sigma_x2;
  m.f_m = f_m;
  m.sigma = sigma;
  validate(m);
  return m;
}

PsdModel make_tabulated_psd(std::vector<std::pair<double, double>> half_table) {
  PsdModel m;
  m.kind = PsdKind::kTabulated;
  m.table = std::move(half_table);
  if (m.table.size() < 2) throw std::invalid_argument("tabulated PSD needs >= 2 knots");
  m.sigma_x2 = table_integral_two_sided(m.table);
  if (!m.table.empty()) m.f_m = m.table.back().first;
  validate(m);
  return m;
}

PsdModel load_tabulated_psd_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open PSD table: " + path);
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double f, d;
    if (ls >> f >> d) rows.emplace_back(f, d);
    // non-numeric rows (header) are skipped
  }
  return make_tabulated_psd(std::move(rows));
}

void validate(const PsdModel& m) {
  if (!(m.sigma_x2 > 0.0)) throw std::invalid_argument("sigma_x2 must be positive");
  switch (m.kind) {
    case PsdKind::kFlat:
      if (!(m.f_m > 0.0)) throw std::invalid_argument("flat PSD needs f_m > 0");
      break;
    case PsdKind::kUnimodal:
    case PsdKind::kMultimodal:
      if (!(m.sigma > 0.0)) throw std::invalid_argument("gaussian PSD needs sigma > 0");
      if (m.kind == PsdKind::kMultimodal && !(m.f_m > 0.0))
        throw std::invalid_argument("multimodal PSD needs f_m > 0");
      break;
    case PsdKind::kTabulated: {
      if (m.table.size() < 2) throw std::invalid_argument("tabulated PSD needs >= 2 knots");
      if (m.table.front().first != 0.0)
        throw std::invalid_argument("tabulated PSD must start at f = 0");
      for (std::size_t i = 0; i < m.table.size(); ++i) {
        if (m.table[i].second < 0.0)
          throw std::invalid_argument("tabulated PSD density must be nonnegative");
        if (i > 0 && !(m.table[i].first > m.table[i - 1].first))
          throw std::invalid_argument("tabulated PSD frequencies must be strictly increasing");
      }
      break;
    }
  }
}

double psd_eval(const PsdModel& m, double f) {
  const double af = std::abs(f);  // evenness by construction
  switch (m.kind) {
    case PsdKind::kFlat:
      return af <= m.f_m ? m.sigma_x2 / (2.0 * m.f_m) : 0.0;
    case PsdKind::kUnimodal: {
      const double z = af / m.sigma;
      return gaussian_alpha(m) * std::exp(-0.5 * z * z);
    }
    case PsdKind::kMultimodal: {
      const double zm = (af - m.f_m) / m.sigma;
      const double zp = (af + m.f_m) / m.sigma;
      return 0.5 * gaussian_alpha(m) *
             (std::exp(-0.5 * zm * zm) + std::exp(-0.5 * zp * zp));
    }
    case PsdKind::kTabulated:
      return table_eval(m, af);
  }
  return 0.0;
}

double support_cutoff(const PsdModel& m) {
  switch (m.kind) {
    case PsdKind::kFlat:
      return m.f_m;
    case PsdKind::kUnimodal:
      return kGaussianCutSigmas * m.sigma;
    case PsdKind::kMultimodal:
      return m.f_m + kGaussianCutSigmas * m.sigma;
    case PsdKind::kTabulated: {
      const auto z = trailing_zero_start(m.table);
      return z ? m.table[*z].first : m.table.back().first;
    }
  }
  return 0.0;
}

double peak_density(const PsdModel& m) {
  switch (m.kind) {
    case PsdKind::kFlat:
      return m.sigma_x2 / (2.0 * m.f_m);
    case PsdKind::kUnimodal:
      return gaussian_alpha(m);
    case PsdKind::kMultimodal:
      // peak at +-f_m up to the cross term
      return psd_eval(m, m.f_m);
    case PsdKind::kTabulated: {
      double p = 0.0;
      for (const auto& [f, d] : m.table) p = std::max(p, d);
      return p;
    }
  }
  return 0.0;
}

double variance(const PsdModel& m) {
  const double cut = support_cutoff(m);
  std::vector<double> bp;
  replica_breakpoints(m, 0.0, -cut, cut, bp);
  const auto f = [&m](double x) { return psd_eval(m, x); };
  return integrate_adaptive_simpson(f, -cut, cut, 1e-9 * m.sigma_x2, bp);
}

double aliased_sum(const PsdModel& m, double f, double f_s) {
  return aliased_sum(m, f, f_s, support_cutoff(m));
}

double aliased_sum(const PsdModel& m, double f, double f_s, double f_cut) {
  if (!(f_s > 0.0)) throw std::invalid_argument("aliased_sum: f_s must be positive");
  const long k_lo = static_cast<long>(std::ceil((f - f_cut) / f_s));
  const long k_hi = static_cast<long>(std::floor((f + f_cut) / f_s));
  double sum = 0.0;
  for (long k = k_lo; k <= k_hi; ++k) {
    sum += psd_eval(m, f - static_cast<double>(k) * f_s);
  }
  return sum;
}

std::optional<double> bandlimit(const PsdModel& m) {
  switch (m.kind) {
    case PsdKind::kFlat:
      return m.f_m;
    case PsdKind::kUnimodal:
    case PsdKind::kMultimodal:
      return std::nullopt;
    case PsdKind::kTabulated: {
      const auto z = trailing_zero_start(m.table);
      if (!z) return std::nullopt;
      return m.table[*z].first;
    }
  }
  return std::nullopt;
}

void replica_breakpoints(const PsdModel& m, double f_s, double lo, double hi,
                         std::vector<double>& out) {
  const double cut = support_cutoff(m);
  // per-replica landmark offsets where the density has a kink or a mode
  std::vector<double> marks;
  switch (m.kind) {
    case PsdKind::kFlat:
      marks = {-m.f_m, m.f_m};
      break;
    case PsdKind::kUnimodal:
      marks = {0.0};
      break;
    case PsdKind::kMultimodal:
      marks = {-m.f_m, 0.0, m.f_m};
      break;
    case PsdKind::kTabulated:
      for (const auto& [f, d] : m.table) {
        marks.push_back(f);
        if (f != 0.0) marks.push_back(-f);
      }
      break;
  }
  const auto push_if_inside = [&](double x) {
    if (x > lo && x < hi) out.push_back(x);
  };
  if (f_s <= 0.0) {
    for (double x : marks) push_if_inside(x);
    return;
  }
  const long k_lo = static_cast<long>(std::ceil((lo - cut) / f_s));
  const long k_hi = static_cast<long>(std::floor((hi + cut) / f_s));
  for (long k = k_lo; k <= k_hi; ++k) {
    for (double x : marks) push_if_inside(x + static_cast<double>(k) * f_s);
  }
}

}  // namespace esampling
