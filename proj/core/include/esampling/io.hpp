#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "esampling/sim.hpp"
#include "esampling/tradeoff.hpp"

namespace esampling {

using LabeledCurve = std::pair<std::string, std::vector<TradeoffPoint>>;

// Columns: f_s_hz,T_s_s,zeta,e_ratio_db,e_h_j,e_hold_j
void write_tradeoff_csv(const std::string& path, std::span<const TradeoffPoint> points);
void write_tradeoff_json(const std::string& path, std::span<const LabeledCurve> curves);
std::string tradeoff_json_string(std::span<const LabeledCurve> curves);

// Columns: time_s,v_eh_v,e_consumed_j,e_harvested_j
void write_trace_csv(const std::string& path, const SimTrace& trace);
// Columns: sample_index,code
void write_codes_csv(const std::string& path, const SimTrace& trace);
// Columns: freq_hz,magnitude_dbfs
void write_spectrum_csv(const std::string& path, const SndrResult& result);

}  // namespace esampling
