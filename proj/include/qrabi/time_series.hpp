#pragma once

#include <string>
#include <vector>

namespace qrabi {

/// Ascending sample times in units of 1/omega.
struct TimeGrid {
  std::vector<double> t;

  /// `samples` points spanning [0, t_max] inclusive.
  static TimeGrid uniform(double t_max, int samples);

  /// `samples` points spanning Omega t / 2pi in [0, periods].
  static TimeGrid uniform_periods(double Omega, double periods, int samples);

  std::size_t size() const { return t.size(); }
};

/// Record of the initial state |-1_z> (x) |alpha> that generated a trace.
struct InitialStateRecord {
  double alpha = 0.0;
  double lambda = 0.0;  ///< frame displacement; the transformed-frame amplitude is alpha - lambda
  int cutoff = 0;       ///< Fock or manifold cutoff used
};

struct TimeSeries {
  std::string method;
  std::vector<double> t;
  std::vector<double> jz;
  std::vector<double> p_minus1;
  InitialStateRecord initial;
  double norm_drift = 0.0;  ///< max |norm(t) - norm(0)| over the grid
};

double rms_difference(const std::vector<double>& a, const std::vector<double>& b);
double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace qrabi
