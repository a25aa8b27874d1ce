#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrabi/vgrwa.hpp"

namespace qrabi::cli {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitConvergence = 3 };

/// Carries the process exit code for a failure detected in the CLI layer.
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

struct Range {
  double min = 0.0;
  double max = 0.0;
  int steps = 101;

  std::vector<double> values() const;
};

enum class Method { Ed, Vgrwa, Grwa, Adiabatic };

std::string method_name(Method m);
/// Parses a comma-separated list; duplicates collapse; order becomes ed, vgrwa, grwa, adiabatic.
std::vector<Method> parse_methods(const std::string& list);

enum class OutputFormat { Csv, Json };

/// Resolved settings shared by spectrum, photon and dynamics.
struct SweepConfig {
  std::string command;  ///< spectrum | photon | dynamics
  double omega = 1.0;
  std::optional<double> Omega;
  std::optional<double> g;
  std::optional<Range> Omega_range;
  std::optional<Range> g_range;
  std::vector<Method> methods{Method::Ed, Method::Vgrwa, Method::Grwa};
  LambdaStrategy lambda_strategy = LambdaStrategy::ClosedForm;
  bool adiabatic_optimized = false;  ///< adiabatic lambda: false -> g/omega, true -> optimized
  int levels = 1;
  std::optional<int> n_max;     ///< ED truncation; unset -> command default
  std::optional<int> n_blocks;  ///< manifold blocks; unset -> max(10, levels + 2)
  OutputFormat format = OutputFormat::Csv;
  std::string output;  ///< empty -> stdout

  // dynamics
  double alpha = 2.0;
  double t_periods = 500.0;
  int samples = 4096;

  /// Throws CliError(kExitConfig) on an inconsistent configuration.
  void validate() const;

  std::string sweep_param() const;  ///< "g" or "Omega"
  std::vector<double> sweep_values() const;
  ModelParams params_at(double sweep_value) const;
  int resolved_n_blocks() const;
  int resolved_static_n_max() const;
};

/// Worker count from QRABI_THREADS (default: hardware concurrency, at least 1).
int worker_count();

struct StaticRow {
  std::string sweep_param;
  double sweep_value = 0.0;
  std::string method;
  int level = 0;
  std::string quantity;
  double value = 0.0;
};

struct DynamicsRow {
  double t = 0.0;
  double t_over_2pi_Omega = 0.0;
  std::string method;
  double jz = 0.0;
  double p_minus1 = 0.0;
};

std::vector<StaticRow> cmd_spectrum(const SweepConfig& config);
std::vector<StaticRow> cmd_photon(const SweepConfig& config);
/// Traces per method plus "<method>-ed" deviation traces when ED is among the methods.
std::vector<DynamicsRow> cmd_dynamics(const SweepConfig& config);

/// Fixed 12-significant-digit rendering used by both output formats.
std::string format_number(double v);

void write_csv(std::ostream& os, const std::vector<StaticRow>& rows);
void write_csv(std::ostream& os, const std::vector<DynamicsRow>& rows);
void write_json(std::ostream& os, const SweepConfig& config, const std::vector<StaticRow>& rows);
void write_json(std::ostream& os, const SweepConfig& config, const std::vector<DynamicsRow>& rows);

/// Entry point behind the qrabi executable; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qrabi::cli
