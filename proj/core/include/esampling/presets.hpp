#pragma once

#include <string>
#include <vector>

#include "esampling/energy.hpp"

namespace esampling {

// Named bundle of circuit + harvester constants and the default input
// bandwidth they were characterized with.
struct Preset {
  std::string name;
  std::string description;
  AdcCircuitParams circuit;
  HarvesterParams harvester;
  double f_m = 0.0;  // default input max frequency [Hz]
};

// The built-in reference design: 8-bit MCS SAR at V_ref = 0.8 V, K^2 = 20,
// f_m = 19.8 MHz, T_aq = 2.5 ns, C_u = 10 fF, C_c = 5 fF, C_s = 0.7 fF,
// A_k = 1.8, V_e = 0.05 V, alpha_tau = 5, g = 0.4, R_h = 23.75 ohm,
// eta = 0.7, C_EH = 40 nF.
Preset paper_example_preset();

// Built-ins plus any *.preset files in $ESAMPLING_PRESET_DIR.
std::vector<std::string> preset_names();

// Lookup by name; unknown names raise std::invalid_argument listing what is
// available.
Preset find_preset(const std::string& name);

// Flat key = value file, SI base units.
Preset load_preset_file(const std::string& path);
void save_preset_file(const Preset& preset, const std::string& path);
std::string preset_to_string(const Preset& preset);

}  // namespace esampling
