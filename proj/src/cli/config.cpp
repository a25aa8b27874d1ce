#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "qrabi/cli.hpp"

namespace qrabi::cli {

std::vector<double> Range::values() const {
  std::vector<double> out;
  if (steps == 1) return {min};
  out.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) out.push_back(i == steps - 1 ? max : min + (max - min) * i / (steps - 1));
  return out;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Ed: return "ed";
    case Method::Vgrwa: return "vgrwa";
    case Method::Grwa: return "grwa";
    case Method::Adiabatic: return "adiabatic";
  }
  return "unknown";
}

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    bool known = false;
    for (auto m : {Method::Ed, Method::Vgrwa, Method::Grwa, Method::Adiabatic}) {
      if (item == method_name(m)) {
        known = true;
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
      }
    }
    if (!known) throw CliError(kExitConfig, "unknown method '" + item + "' (expected ed, vgrwa, grwa, adiabatic)");
  }
  if (out.empty()) throw CliError(kExitConfig, "--methods must name at least one method");
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void fail(const std::string& msg) { throw CliError(kExitConfig, msg); }

void check_range(const Range& r, const char* name) {
  if (r.steps < 1) fail(std::string("--") + name + "-steps must be >= 1");
  if (!(r.min <= r.max)) fail(std::string("--") + name + "-min must not exceed --" + name + "-max");
  if (r.min < 0.0) fail(std::string("--") + name + "-min must be >= 0");
}

bool has(const std::vector<Method>& ms, Method m) { return std::find(ms.begin(), ms.end(), m) != ms.end(); }

}  // namespace

void SweepConfig::validate() const {
  if (command != "spectrum" && command != "photon" && command != "dynamics") fail("unknown command '" + command + "'");
  if (!(omega > 0.0)) fail("--omega must be > 0");
  if (g_range && Omega_range) fail("only one of the g and Omega ranges may vary per sweep");
  if (g_range && g) fail("--g conflicts with --g-min/--g-max");
  if (Omega_range && Omega) fail("--Omega conflicts with --Omega-min/--Omega-max");
  if (!g && !g_range) fail("--g (or a g range) is required");
  if (!Omega && !Omega_range) fail("--Omega (or an Omega range) is required");
  if (g && *g < 0.0) fail("--g must be >= 0");
  if (Omega && *Omega < 0.0) fail("--Omega must be >= 0");
  if (g_range) check_range(*g_range, "g");
  if (Omega_range) check_range(*Omega_range, "Omega");
  if (levels < 1) fail("--levels must be >= 1");
  if (n_max && *n_max < 1) fail("--n-max must be >= 1");
  if (n_blocks && *n_blocks < 1) fail("--n-blocks must be >= 1");
  if (methods.empty()) fail("--methods must name at least one method");
  if (lambda_strategy == LambdaStrategy::AdiabaticOptimized)
    fail("--lambda-strategy must be one of exact-root, self-consistent, closed-form, grwa");
  if (command == "photon" && has(methods, Method::Adiabatic))
    fail("photon: the adiabatic method has no photon-number formula");
  if (command == "dynamics") {
    if (g_range || Omega_range) fail("dynamics takes fixed --g and --Omega");
    if (has(methods, Method::Adiabatic)) fail("dynamics: the adiabatic method has no dynamics");
    if (!(alpha >= 0.0)) fail("--alpha must be >= 0");
    if (samples < 1) fail("--samples must be >= 1");
    if (!(t_periods >= 0.0)) fail("--t-periods must be >= 0");
    if (!(*Omega > 0.0)) fail("dynamics: time is measured in periods of Omega, which must be > 0");
  }
}

std::string SweepConfig::sweep_param() const { return Omega_range ? "Omega" : "g"; }

std::vector<double> SweepConfig::sweep_values() const {
  if (g_range) return g_range->values();
  if (Omega_range) return Omega_range->values();
  return {*g};
}

ModelParams SweepConfig::params_at(double v) const {
  if (Omega_range) return {omega, v, *g};
  return {omega, *Omega, v};
}

int SweepConfig::resolved_n_blocks() const { return n_blocks.value_or(std::max(10, levels + 2)); }

int SweepConfig::resolved_static_n_max() const { return n_max.value_or(200); }

int worker_count() {
  if (const char* env = std::getenv("QRABI_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw CliError(kExitConfig, "QRABI_THREADS must be a positive integer");
    return static_cast<int>(std::min(v, 1024L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace qrabi::cli
