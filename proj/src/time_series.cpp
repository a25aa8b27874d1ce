#include "qrabi/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qrabi/errors.hpp"

namespace qrabi {

TimeGrid TimeGrid::uniform(double t_max, int samples) {
  if (samples < 1) throw DomainError("TimeGrid: samples must be >= 1");
  if (!(t_max >= 0.0)) throw DomainError("TimeGrid: t_max must be >= 0");
  TimeGrid grid;
  grid.t.resize(samples);
  for (int k = 0; k < samples; ++k) grid.t[k] = samples == 1 ? 0.0 : t_max * k / (samples - 1);
  return grid;
}

TimeGrid TimeGrid::uniform_periods(double Omega, double periods, int samples) {
  if (!(Omega > 0.0)) throw DomainError("TimeGrid: a period window needs Omega > 0");
  return uniform(2.0 * std::numbers::pi * periods / Omega, samples);
}

double rms_difference(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) throw DomainError("rms_difference: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc / static_cast<double>(a.size()));
}

double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DomainError("max_abs_difference: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace qrabi
