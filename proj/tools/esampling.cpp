// Command-line front end: tradeoff curves, NMSE and energy evaluations, and
// time-domain simulations with CSV/JSON emission.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "esampling/errors.hpp"
#include "esampling/io.hpp"
#include "esampling/presets.hpp"
#include "esampling/sampling.hpp"
#include "esampling/sim.hpp"
#include "esampling/tradeoff.hpp"

namespace {

using namespace esampling;

constexpr int kExitError = 2;
constexpr int kExitInfeasible = 3;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Aggregated run options; subcommands fill the fields they use.
struct RunConfig {
  std::string preset_name = "paper-example";
  std::string config_file;
  std::string psd_kind = "flat";  // flat | unimodal | multimodal | <table.csv>
  double sigma_scale = 0.0;       // gaussian width [Hz]; 0 = kind default
  int bits = 0;                   // 0 = preset default
  std::vector<int> bits_list;
  double f_m = 0.0;  // 0 = preset default
  std::string fs_grid;
  double f_s = 0.0;
  std::string output;
  std::string format = "csv";  // csv | json
  double epsilon = -1.0;
  double delta_db = 0.0;
  bool has_delta = false;
};

Preset resolve_preset(const RunConfig& rc) {
  if (rc.format != "csv" && rc.format != "json")
    throw std::invalid_argument("--format must be csv or json");
  Preset p = rc.config_file.empty() ? find_preset(rc.preset_name)
                                    : load_preset_file(rc.config_file);
  if (rc.bits > 0) p.circuit.n = rc.bits;
  if (rc.f_m > 0.0) p.f_m = rc.f_m;
  return p;
}

PsdModel resolve_psd(const RunConfig& rc, const Preset& preset) {
  const double sigma_x2 = preset.circuit.sigma_x2();
  const double f_m = preset.f_m;
  if (rc.psd_kind == "flat") return make_flat_psd(sigma_x2, f_m);
  if (rc.psd_kind == "unimodal") {
    return make_unimodal_psd(sigma_x2, f_m,
                             rc.sigma_scale > 0.0 ? rc.sigma_scale : f_m / 3.0);
  }
  if (rc.psd_kind == "multimodal") {
    return make_multimodal_psd(sigma_x2, f_m,
                               rc.sigma_scale > 0.0 ? rc.sigma_scale : f_m / 6.0);
  }
  return load_tabulated_psd_csv(rc.psd_kind);
}

// Grid spec "<start>:<stop>:<count>", each bound a number in Hz or a multiple
// of the Nyquist rate / band edge: "nyquist", "0.3nyquist", "1.5fm".
double parse_grid_bound(const std::string& tok, double f_m) {
  const auto parse_scaled = [&](const std::string& unit, double scale) -> std::optional<double> {
    const auto pos = tok.size() - unit.size();
    if (tok.size() < unit.size() || tok.compare(pos, unit.size(), unit) != 0)
      return std::nullopt;
    const std::string head = tok.substr(0, pos);
    return (head.empty() ? 1.0 : std::stod(head)) * scale;
  };
  if (auto v = parse_scaled("nyquist", 2.0 * f_m)) return *v;
  if (auto v = parse_scaled("fm", f_m)) return *v;
  return std::stod(tok);
}

std::vector<double> parse_fs_grid(const std::string& spec, double f_m) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.size() != 3)
    throw std::invalid_argument("fs-grid must be <start>:<stop>:<count>");
  const double start = parse_grid_bound(parts[0], f_m);
  const double stop = parse_grid_bound(parts[1], f_m);
  const int count = std::stoi(parts[2]);
  if (count < 1) throw std::invalid_argument("fs-grid: count must be >= 1");
  if (count == 1) return {start};
  if (!(start > stop)) throw std::invalid_argument("fs-grid must decrease from start to stop");
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) {
    grid[i] = start + (stop - start) * i / (count - 1);
  }
  return grid;
}

std::string with_suffix(const std::string& path, const std::string& tag) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || path.find('/', dot) != std::string::npos)
    return path + tag;
  return path.substr(0, dot) + tag + path.substr(dot);
}

int cmd_presets(const RunConfig& rc) {
  if (!rc.preset_name.empty() && rc.preset_name != "all") {
    std::cout << preset_to_string(find_preset(rc.preset_name));
    return 0;
  }
  for (const auto& name : preset_names()) {
    std::cout << name << "\n";
  }
  return 0;
}

int cmd_nmse(const RunConfig& rc) {
  const Preset preset = resolve_preset(rc);
  const PsdModel model = resolve_psd(rc, preset);
  const int bits = preset.circuit.n;
  if (rc.fs_grid.empty()) {
    const auto r = nmse_result(model, rc.f_s, bits);
    std::cout << "f_s_hz = " << fmt(r.f_s) << "\nzeta = " << fmt(r.zeta)
              << "\nquantization_zeta = " << fmt(r.quantization_zeta) << "\n";
    return 0;
  }
  const auto grid = parse_fs_grid(rc.fs_grid, preset.f_m);
  std::ostringstream csv;
  csv << "f_s_hz,zeta,quantization_zeta\n";
  for (double f_s : grid) {
    const auto r = nmse_result(model, f_s, bits);
    csv << fmt(r.f_s) << ',' << fmt(r.zeta) << ',' << fmt(r.quantization_zeta) << '\n';
  }
  if (rc.output.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(rc.output);
    if (!out) throw std::runtime_error("cannot write " + rc.output);
    out << csv.str();
  }
  return 0;
}

int cmd_energy(const RunConfig& rc) {
  const Preset preset = resolve_preset(rc);
  EnergyBudget b = hold_energy(preset.circuit);
  nlohmann::json doc{{"bits", preset.circuit.n},
                     {"e_dac_j", b.e_dac},
                     {"e_c_j", b.e_c},
                     {"e_sl_j", b.e_sl},
                     {"e_hold_j", b.e_hold},
                     {"a1_j_per_v", b.a1},
                     {"a2_j_per_v2", b.a2}};
  if (rc.f_s > 0.0) {
    const auto plan = TimingPlan::from_rate(acquisition_time(preset.circuit), rc.f_s);
    b = with_harvest(b, plan, preset.harvester.efficiency(plan.t_h),
                     preset.harvester.r_h, preset.circuit.sigma_x2(), preset.circuit.k);
    doc["f_s_hz"] = rc.f_s;
    doc["e_h_j"] = b.e_h;
    doc["e_ratio_db"] = b.e_ratio_db;
  }
  if (rc.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const auto& [key, value] : doc.items()) {
      std::cout << key << " = "
                << (value.is_number_float() ? fmt(value.get<double>())
                                            : value.dump())
                << "\n";
    }
  }
  return 0;
}

int cmd_nyquist(const RunConfig& rc) {
  const Preset preset = resolve_preset(rc);
  const PsdModel model = resolve_psd(rc, preset);
  const double db = nyquist_energy_ratio_db(model, preset.circuit, preset.harvester);
  std::cout << "nyquist_energy_ratio_db = " << fmt(db) << "\n";
  return 0;
}

int cmd_tradeoff(const RunConfig& rc) {
  const Preset base = resolve_preset(rc);
  std::vector<int> bits = rc.bits_list;
  if (bits.empty()) bits.push_back(base.circuit.n);

  std::vector<LabeledCurve> curves;
  for (int n : bits) {
    Preset p = base;
    p.circuit.n = n;
    const PsdModel model = resolve_psd(rc, p);
    const auto grid = parse_fs_grid(rc.fs_grid, p.f_m);
    auto curve = tradeoff_curve(model, p.circuit, p.harvester, grid);
    curves.emplace_back("bits=" + std::to_string(n), std::move(curve));
  }

  if (rc.output.empty()) throw std::invalid_argument("tradeoff requires --output");
  if (rc.format == "json") {
    write_tradeoff_json(rc.output, curves);
    std::cout << rc.output << "\n";
  } else {
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const std::string path =
          curves.size() == 1 ? rc.output
                             : with_suffix(rc.output, "_bits" + std::to_string(bits[i]));
      write_tradeoff_csv(path, curves[i].second);
      std::cout << path << "\n";
    }
  }
  return 0;
}

int cmd_solve(const RunConfig& rc) {
  const Preset preset = resolve_preset(rc);
  const PsdModel model = resolve_psd(rc, preset);
  TradeoffPoint pt;
  if (rc.has_delta) {
    pt = min_nmse_under_energy(model, preset.circuit, preset.harvester,
                               std::pow(10.0, rc.delta_db / 10.0));
  } else if (rc.epsilon >= 0.0) {
    pt = max_ratio_under_fidelity(model, preset.circuit, preset.harvester, rc.epsilon);
  } else {
    throw std::invalid_argument("solve requires --delta-db or --epsilon");
  }
  std::cout << "f_s_hz = " << fmt(pt.f_s) << "\nT_s_s = " << fmt(pt.t_s)
            << "\nzeta = " << fmt(pt.zeta) << "\ne_ratio_db = " << fmt(pt.e_ratio_db)
            << "\ne_h_j = " << fmt(pt.e_h) << "\ne_hold_j = " << fmt(pt.e_hold) << "\n";
  return 0;
}

struct SimulateOptions {
  std::string input_spec = "sinusoid:19.8e6";
  double f_s = 40e6;
  int samples = 4096;
  double duration = 0.0;  // [s]; alternative to --samples
  int fft = 0;
  int substeps = 16;
  double c_eh = 0.0;
  int transfer_period = 0;
  bool coherent_snap = true;
  std::string trace_out, codes_out, spectrum_out;
};

InputSignal parse_input(const std::string& spec, const Preset& preset, double f_s,
                        int n_fft, bool snap) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.empty()) throw std::invalid_argument("empty --input spec");
  if (parts[0] == "sinusoid") {
    SinusoidInput in;
    in.freq_hz = parts.size() > 1 ? std::stod(parts[1]) : preset.f_m;
    in.offset_v = parts.size() > 2 ? std::stod(parts[2]) : 0.5 * preset.circuit.v_ref;
    in.amplitude_v = parts.size() > 3 ? std::stod(parts[3]) : 0.5 * preset.circuit.v_ref;
    if (n_fft > 0 && snap) {
      const double snapped = coherent_frequency(in.freq_hz, f_s, n_fft);
      if (snapped != in.freq_hz) {
        std::cout << "input_freq_hz_snapped = " << fmt(snapped) << "\n";
        in.freq_hz = snapped;
      }
    }
    return in;
  }
  if (parts[0] == "gaussian") {
    const std::string kind = parts.size() > 1 ? parts[1] : "flat";
    const std::uint64_t seed = parts.size() > 2 ? std::stoull(parts[2]) : 1;
    RunConfig rc;
    rc.psd_kind = kind;
    return ShapedGaussianInput{resolve_psd(rc, preset), seed};
  }
  throw std::invalid_argument("unknown --input kind: " + parts[0]);
}

int cmd_simulate(const RunConfig& rc, const SimulateOptions& so, bool sndr_only) {
  const Preset preset = resolve_preset(rc);
  SimConfig cfg;
  cfg.circuit = preset.circuit;
  cfg.harvester = preset.harvester;
  if (so.c_eh > 0.0) cfg.harvester.c_eh = so.c_eh;
  if (so.transfer_period > 0) cfg.harvester.transfer_period_samples = so.transfer_period;
  cfg.plan = TimingPlan::from_rate(acquisition_time(preset.circuit), so.f_s);
  cfg.num_samples = so.samples;
  cfg.hold_substeps = so.substeps;
  cfg.input = parse_input(so.input_spec, preset, so.f_s, so.fft, so.coherent_snap);

  const SimTrace trace = run_simulation(cfg);
  const auto ledger = consumed_energy_ledger(trace);

  std::cout << "samples = " << trace.codes.size() << "\n"
            << "f_s_hz = " << fmt(so.f_s) << "\n"
            << "overloads = " << trace.overload_count << "\n"
            << "e_consumed_total_j = " << fmt(ledger.back()) << "\n"
            << "e_consumed_per_sample_j = " << fmt(average_consumed_per_sample(trace)) << "\n"
            << "e_harvested_total_j = " << fmt(trace.timeline.back().e_harvested) << "\n"
            << "e_harvested_per_sample_j = "
            << fmt(trace.timeline.back().e_harvested / trace.codes.size()) << "\n"
            << "v_eh_final_v = " << fmt(trace.timeline.back().v_eh) << "\n";
  const double harvested = trace.timeline.back().e_harvested;
  if (harvested > 0.0 && ledger.back() > 0.0) {
    std::cout << "ledger_ratio_db = "
              << fmt(10.0 * std::log10(harvested / ledger.back())) << "\n";
  }

  if (so.fft > 0) {
    const auto r = sndr_fft(trace, so.fft);
    std::cout << "sndr_db = " << fmt(r.sndr_db) << "\n"
              << "enob = " << fmt(r.enob) << "\n"
              << "noise_floor_gap_db = " << fmt(r.noise_floor_gap_db) << "\n"
              << "signal_bin = " << r.signal_bin << "\n"
              << "signal_freq_hz = " << fmt(r.signal_freq_hz) << "\n";
    if (!so.spectrum_out.empty()) write_spectrum_csv(so.spectrum_out, r);
  }
  if (!sndr_only) {
    if (!so.trace_out.empty()) write_trace_csv(so.trace_out, trace);
    if (!so.codes_out.empty()) write_codes_csv(so.codes_out, trace);
  }
  return 0;
}

void emit_error(const char* kind, const std::exception& e) {
  nlohmann::json err{{"error", kind}, {"message", e.what()}};
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy-harvesting SAR ADC analysis and simulation"};
  app.require_subcommand(1);
  app.set_config("--config-file");

  RunConfig rc;
  SimulateOptions so;

  const auto add_common = [&](CLI::App* cmd, bool wants_psd, bool wants_bits = true) {
    cmd->add_option("--preset", rc.preset_name, "named parameter set");
    cmd->add_option("--config", rc.config_file, "parameter file (key = value)");
    if (wants_bits) cmd->add_option("--bits", rc.bits, "quantizer resolution override");
    cmd->add_option("--fm", rc.f_m, "input max/characteristic frequency [Hz]");
    if (wants_psd) {
      cmd->add_option("--psd", rc.psd_kind, "flat | unimodal | multimodal | table.csv");
      cmd->add_option("--psd-sigma", rc.sigma_scale, "gaussian spectral width [Hz]");
    }
  };

  auto* presets_cmd = app.add_subcommand("presets", "list presets or dump one");
  presets_cmd->add_option("--name", rc.preset_name, "preset to dump")->default_str("");
  rc.preset_name = "";

  auto* nmse_cmd = app.add_subcommand("nmse", "sampling NMSE of a PSD");
  add_common(nmse_cmd, true);
  nmse_cmd->add_option("--fs", rc.f_s, "sampling rate [Hz]");
  nmse_cmd->add_option("--fs-grid", rc.fs_grid, "start:stop:count sweep");
  nmse_cmd->add_option("--output,-o", rc.output, "CSV output path");

  auto* energy_cmd = app.add_subcommand("energy", "per-sample energy budget");
  add_common(energy_cmd, false);
  energy_cmd->add_option("--fs", rc.f_s, "include harvest terms at this rate [Hz]");
  energy_cmd->add_option("--format", rc.format, "csv | json");

  auto* nyquist_cmd = app.add_subcommand("nyquist", "energy ratio at the Nyquist rate");
  add_common(nyquist_cmd, true);

  auto* tradeoff_cmd = app.add_subcommand("tradeoff", "NMSE vs energy-ratio curves");
  add_common(tradeoff_cmd, true, false);
  tradeoff_cmd->add_option("--bits", rc.bits_list, "curve family resolutions, e.g. 8,10,12")
      ->delimiter(',');
  tradeoff_cmd->add_option("--fs-grid", rc.fs_grid, "start:stop:count, decreasing")
      ->required();
  tradeoff_cmd->add_option("--output,-o", rc.output, "output path")->required();
  tradeoff_cmd->add_option("--format", rc.format, "csv | json");

  auto* solve_cmd = app.add_subcommand("solve", "constrained operating point");
  add_common(solve_cmd, true);
  auto* delta_opt = solve_cmd->add_option("--delta-db", rc.delta_db,
                                          "min NMSE subject to E_ratio >= delta");
  solve_cmd->add_option("--epsilon", rc.epsilon, "max E_ratio subject to zeta <= epsilon");

  auto* sim_cmd = app.add_subcommand("simulate", "time-domain behavioral run");
  add_common(sim_cmd, false);
  auto* sndr_cmd = app.add_subcommand("sndr", "simulate and report SNDR only");
  add_common(sndr_cmd, false);
  for (auto* cmd : {sim_cmd, sndr_cmd}) {
    cmd->add_option("--input", so.input_spec,
                    "sinusoid:f[:offset[:amp]] or gaussian:kind[:seed]");
    cmd->add_option("--fs", so.f_s, "sampling rate [Hz]");
    cmd->add_option("--samples", so.samples, "number of conversions");
    cmd->add_option("--fft", so.fft, "FFT length for the SNDR report");
    cmd->add_option("--substeps", so.substeps, "harvester substeps per hold window");
    cmd->add_option("--ceh", so.c_eh, "harvesting capacitor override [F]");
    cmd->add_option("--transfer-period", so.transfer_period, "samples per transfer cycle");
    cmd->add_flag("!--no-coherent-snap", so.coherent_snap,
                  "keep the requested sinusoid frequency as-is");
    cmd->add_option("--spectrum", so.spectrum_out, "spectrum CSV path");
  }
  sim_cmd->add_option("--trace", so.trace_out, "timeline CSV path");
  sim_cmd->add_option("--codes", so.codes_out, "codes CSV path");
  sndr_cmd->get_option("--fft")->default_val(1024);

  CLI11_PARSE(app, argc, argv);

  try {
    if (presets_cmd->parsed()) return cmd_presets(rc);
    if (nmse_cmd->parsed()) return cmd_nmse(rc);
    if (energy_cmd->parsed()) return cmd_energy(rc);
    if (nyquist_cmd->parsed()) return cmd_nyquist(rc);
    if (tradeoff_cmd->parsed()) return cmd_tradeoff(rc);
    if (solve_cmd->parsed()) {
      rc.has_delta = delta_opt->count() > 0;
      return cmd_solve(rc);
    }
    if (sim_cmd->parsed()) return cmd_simulate(rc, so, false);
    if (sndr_cmd->parsed()) return cmd_simulate(rc, so, true);
  } catch (const infeasible_error& e) {
    emit_error("infeasible", e);
    return kExitInfeasible;
  } catch (const std::exception& e) {
    emit_error("invalid", e);
    return kExitError;
  }
  return kExitError;
}
