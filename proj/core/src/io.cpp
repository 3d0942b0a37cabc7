#include "esampling/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace esampling {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

nlohmann::json point_json(const TradeoffPoint& p) {
  return {{"f_s_hz", p.f_s},         {"T_s_s", p.t_s},  {"zeta", p.zeta},
          {"e_ratio_db", p.e_ratio_db}, {"e_h_j", p.e_h}, {"e_hold_j", p.e_hold}};
}

}  // namespace

void write_tradeoff_csv(const std::string& path, std::span<const TradeoffPoint> points) {
  auto out = open_out(path);
  out << "f_s_hz,T_s_s,zeta,e_ratio_db,e_h_j,e_hold_j\n";
  for (const auto& p : points) {
    out << num(p.f_s) << ',' << num(p.t_s) << ',' << num(p.zeta) << ','
        << num(p.e_ratio_db) << ',' << num(p.e_h) << ',' << num(p.e_hold) << '\n';
  }
}

std::string tradeoff_json_string(std::span<const LabeledCurve> curves) {
  nlohmann::json doc;
  doc["curves"] = nlohmann::json::array();
  for (const auto& [label, points] : curves) {
    nlohmann::json curve;
    curve["label"] = label;
    curve["points"] = nlohmann::json::array();
    for (const auto& p : points) curve["points"].push_back(point_json(p));
    doc["curves"].push_back(std::move(curve));
  }
  return doc.dump(2) + "\n";
}

void write_tradeoff_json(const std::string& path, std::span<const LabeledCurve> curves) {
  open_out(path) << tradeoff_json_string(curves);
}

void write_trace_csv(const std::string& path, const SimTrace& trace) {
  auto out = open_out(path);
  out << "time_s,v_eh_v,e_consumed_j,e_harvested_j\n";
  for (const auto& pt : trace.timeline) {
    out << num(pt.time_s) << ',' << num(pt.v_eh) << ',' << num(pt.e_consumed) << ','
        << num(pt.e_harvested) << '\n';
  }
}

void write_codes_csv(const std::string& path, const SimTrace& trace) {
  auto out = open_out(path);
  out << "sample_index,code\n";
  for (std::size_t i = 0; i < trace.codes.size(); ++i) {
    out << i << ',' << trace.codes[i] << '\n';
  }
}

void write_spectrum_csv(const std::string& path, const SndrResult& result) {
  auto out = open_out(path);
  out << "freq_hz,magnitude_dbfs\n";
  for (std::size_t i = 0; i < result.freq_hz.size(); ++i) {
    out << num(result.freq_hz[i]) << ',' << num(result.magnitude_dbfs[i]) << '\n';
  }
}

}  // namespace esampling
