#include "esampling/presets.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace esampling {

namespace {

// shortest representation that parses back to the same double
std::string format_double(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::filesystem::path preset_dir() {
  const char* dir = std::getenv("ESAMPLING_PRESET_DIR");
  return dir ? std::filesystem::path(dir) : std::filesystem::path();
}

}  // namespace

Preset paper_example_preset() {
  Preset p;
  p.name = "paper-example";
  p.description = "8-bit MCS SAR reference design, 19.8 MHz band";
  p.circuit.n = 8;
  p.circuit.c_u = 10e-15;
  p.circuit.c_c = 5e-15;
  p.circuit.c_s = 0.7e-15;
  p.circuit.g = 0.4;
  p.circuit.a_k = 1.8;
  p.circuit.v_e = 0.05;
  p.circuit.alpha_tau = 5.0;
  p.circuit.v_ref = 0.8;
  p.circuit.k = std::sqrt(20.0);
  p.circuit.t_aq = 2.5e-9;  // stated directly; r_on is not specified
  p.harvester.r_h = 23.75;
  p.harvester.c_eh = 40e-9;
  p.harvester.eta_mode = EtaMode::kFixed;
  p.harvester.eta = 0.7;
  p.harvester.transfer_period_samples = 500;
  p.harvester.transfer_dead_time = 0.0;
  p.f_m = 19.8e6;
  return p;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names{"paper-example"};
  const auto dir = preset_dir();
  if (!dir.empty() && std::filesystem::is_directory(dir)) {
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.path().extension() == ".preset") {
        names.push_back(entry.path().stem().string());
      }
    }
  }
  return names;
}

Preset find_preset(const std::string& name) {
  if (name == "paper-example") return paper_example_preset();
  const auto dir = preset_dir();
  if (!dir.empty()) {
    const auto path = dir / (name + ".preset");
    if (std::filesystem::exists(path)) return load_preset_file(path.string());
  }
  std::string msg = "unknown preset '" + name + "'; available:";
  for (const auto& n : preset_names()) msg += " " + n;
  throw std::invalid_argument(msg);
}

Preset load_preset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open preset file: " + path);

  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  Preset p;
  p.name = std::filesystem::path(path).stem().string();
  const auto str = [&](const char* key, std::string& out) {
    if (auto it = kv.find(key); it != kv.end()) out = it->second;
  };
  const auto num = [&](const char* key, double& out) {
    if (auto it = kv.find(key); it != kv.end()) out = std::stod(it->second);
  };
  const auto integer = [&](const char* key, int& out) {
    if (auto it = kv.find(key); it != kv.end()) out = std::stoi(it->second);
  };
  const auto boolean = [&](const char* key, bool& out) {
    if (auto it = kv.find(key); it != kv.end()) out = it->second == "true" || it->second == "1";
  };

  str("name", p.name);
  str("description", p.description);
  integer("n", p.circuit.n);
  num("c_u", p.circuit.c_u);
  num("c_c", p.circuit.c_c);
  num("c_s", p.circuit.c_s);
  num("g", p.circuit.g);
  num("a_k", p.circuit.a_k);
  num("v_e", p.circuit.v_e);
  num("r_on", p.circuit.r_on);
  num("r_q", p.circuit.r_q);
  num("alpha_tau", p.circuit.alpha_tau);
  num("v_ref", p.circuit.v_ref);
  if (auto it = kv.find("k_squared"); it != kv.end()) {
    p.circuit.k = std::sqrt(std::stod(it->second));
  }
  num("k", p.circuit.k);
  num("t_aq", p.circuit.t_aq);
  num("f_m", p.f_m);
  num("r_h", p.harvester.r_h);
  num("c_eh", p.harvester.c_eh);
  if (auto it = kv.find("eta_mode"); it != kv.end()) {
    if (it->second == "fixed") {
      p.harvester.eta_mode = EtaMode::kFixed;
    } else if (it->second == "from_rc") {
      p.harvester.eta_mode = EtaMode::kFromRc;
    } else {
      throw std::invalid_argument("preset: eta_mode must be 'fixed' or 'from_rc'");
    }
  }
  num("eta", p.harvester.eta);
  integer("transfer_period_samples", p.harvester.transfer_period_samples);
  num("transfer_dead_time", p.harvester.transfer_dead_time);
  boolean("diode_ideal", p.harvester.diode_ideal);

  validate(p.circuit);
  validate(p.harvester);
  return p;
}

std::string preset_to_string(const Preset& p) {
  std::ostringstream out;
  out << "name = " << p.name << "\n";
  if (!p.description.empty()) out << "description = " << p.description << "\n";
  out << "n = " << p.circuit.n << "\n"
      << "c_u = " << format_double(p.circuit.c_u) << "\n"
      << "c_c = " << format_double(p.circuit.c_c) << "\n"
      << "c_s = " << format_double(p.circuit.c_s) << "\n"
      << "g = " << format_double(p.circuit.g) << "\n"
      << "a_k = " << format_double(p.circuit.a_k) << "\n"
      << "v_e = " << format_double(p.circuit.v_e) << "\n"
      << "r_on = " << format_double(p.circuit.r_on) << "\n"
      << "r_q = " << format_double(p.circuit.r_q) << "\n"
      << "alpha_tau = " << format_double(p.circuit.alpha_tau) << "\n"
      << "v_ref = " << format_double(p.circuit.v_ref) << "\n"
      << "k = " << format_double(p.circuit.k) << "\n";
  {
    // derived display value; k above is the exact round-trip field
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", p.circuit.k * p.circuit.k);
    out << "k_squared = " << buf << "\n";
  }
  out
      << "t_aq = " << format_double(p.circuit.t_aq) << "\n"
      << "f_m = " << format_double(p.f_m) << "\n"
      << "r_h = " << format_double(p.harvester.r_h) << "\n"
      << "c_eh = " << format_double(p.harvester.c_eh) << "\n"
      << "eta_mode = " << (p.harvester.eta_mode == EtaMode::kFixed ? "fixed" : "from_rc")
      << "\n"
      << "eta = " << format_double(p.harvester.eta) << "\n"
      << "transfer_period_samples = " << p.harvester.transfer_period_samples << "\n"
      << "transfer_dead_time = " << format_double(p.harvester.transfer_dead_time) << "\n"
      << "diode_ideal = " << (p.harvester.diode_ideal ? "true" : "false") << "\n";
  return out.str();
}

void save_preset_file(const Preset& preset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write preset file: " + path);
  out << preset_to_string(preset);
}

}  // namespace esampling
