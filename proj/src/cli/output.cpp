#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "qrabi/cli.hpp"

namespace qrabi::cli {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

void write_csv(std::ostream& os, const std::vector<StaticRow>& rows) {
  os << "sweep_param,sweep_value,method,level,quantity,value\n";
  for (const auto& r : rows)
    os << r.sweep_param << ',' << format_number(r.sweep_value) << ',' << r.method << ',' << r.level << ','
       << r.quantity << ',' << format_number(r.value) << '\n';
}

void write_csv(std::ostream& os, const std::vector<DynamicsRow>& rows) {
  os << "t,t_over_2pi_Omega,method,jz,p_minus1\n";
  for (const auto& r : rows)
    os << format_number(r.t) << ',' << format_number(r.t_over_2pi_Omega) << ',' << r.method << ','
       << format_number(r.jz) << ',' << format_number(r.p_minus1) << '\n';
}

namespace {

using nlohmann::json;

// Same 12 significant digits as the CSV.
double rounded(double v) { return std::stod(format_number(v)); }

json range_json(const Range& r) { return {{"min", rounded(r.min)}, {"max", rounded(r.max)}, {"steps", r.steps}}; }

json meta_json(const SweepConfig& c) {
  json m;
  m["command"] = c.command;
  m["omega"] = rounded(c.omega);
  m["Omega"] = c.Omega ? json(rounded(*c.Omega)) : json(nullptr);
  m["g"] = c.g ? json(rounded(*c.g)) : json(nullptr);
  m["Omega_range"] = c.Omega_range ? range_json(*c.Omega_range) : json(nullptr);
  m["g_range"] = c.g_range ? range_json(*c.g_range) : json(nullptr);
  m["sweep_param"] = c.sweep_param();
  json methods = json::array();
  for (auto mth : c.methods) methods.push_back(method_name(mth));
  m["methods"] = methods;
  m["lambda_strategy"] = std::string(to_string(c.lambda_strategy));
  m["format"] = c.format == OutputFormat::Csv ? "csv" : "json";
  if (c.command == "dynamics") {
    m["alpha"] = rounded(c.alpha);
    m["t_periods"] = rounded(c.t_periods);
    m["samples"] = c.samples;
    m["n_max"] = c.n_max ? json(*c.n_max) : json("auto");
  } else {
    m["adiabatic_lambda"] = c.adiabatic_optimized ? "optimized" : "grwa";
    m["levels"] = c.levels;
    m["n_max"] = c.resolved_static_n_max();
    m["n_blocks"] = c.resolved_n_blocks();
  }
  return m;
}

}  // namespace

void write_json(std::ostream& os, const SweepConfig& config, const std::vector<StaticRow>& rows) {
  json out;
  out["meta"] = meta_json(config);
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"sweep_param", r.sweep_param},
                   {"sweep_value", rounded(r.sweep_value)},
                   {"method", r.method},
                   {"level", r.level},
                   {"quantity", r.quantity},
                   {"value", rounded(r.value)}});
  out["rows"] = std::move(arr);
  os << out.dump(2) << '\n';
}

void write_json(std::ostream& os, const SweepConfig& config, const std::vector<DynamicsRow>& rows) {
  json out;
  out["meta"] = meta_json(config);
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"t", rounded(r.t)},
                   {"t_over_2pi_Omega", rounded(r.t_over_2pi_Omega)},
                   {"method", r.method},
                   {"jz", rounded(r.jz)},
                   {"p_minus1", rounded(r.p_minus1)}});
  out["rows"] = std::move(arr);
  os << out.dump(2) << '\n';
}

}  // namespace qrabi::cli
