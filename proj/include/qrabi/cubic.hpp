#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>

namespace qrabi {

/// Real roots of the monic cubic E^3 + b E^2 + c E + d with three real roots.
template <typename Scalar>
struct CubicRoots {
  std::array<Scalar, 3> roots;  ///< ascending
  Scalar theta;                 ///< angle of the trigonometric parametrization, in [0, pi/3]
};

/// Below this value of b^2 - 3c the roots are treated as a triple root.
inline constexpr double kTripleRootThreshold = 1e-30;

/// Slack allowed on the arccos argument before it is considered out of range.
inline constexpr double kArccosClampSlack = 1e-9;

/// Trigonometric (Viete) solution for a cubic with three real roots.
///
/// With p = b^2 - 3c and theta = arccos[(2b^3 - 9bc + 27d) / (2 p^{3/2})] / 3:
///   E1 = (-b - 2 sqrt(p) cos theta) / 3
///   E2 = (-b + sqrt(p) (cos theta + sqrt3 sin theta)) / 3
///   E3 = (-b + sqrt(p) (cos theta - sqrt3 sin theta)) / 3
/// so that E1 <= E3 <= E2. Returns nullopt when p is below kTripleRootThreshold
/// or the arccos argument leaves [-1, 1] by more than kArccosClampSlack
/// (complex roots); callers fall back to a numeric eigensolver.
template <typename Scalar>
std::optional<CubicRoots<Scalar>> trig_cubic_roots(Scalar b, Scalar c, Scalar d) {
  using std::acos;
  using std::cos;
  using std::sin;
  using std::sqrt;
  const Scalar p = b * b - Scalar(3) * c;
  if (!(p >= Scalar(kTripleRootThreshold))) return std::nullopt;
  const Scalar sp = sqrt(p);
  Scalar arg = (Scalar(2) * b * b * b - Scalar(9) * b * c + Scalar(27) * d) / (Scalar(2) * p * sp);
  if (!(std::abs(arg) <= Scalar(1) + Scalar(kArccosClampSlack))) return std::nullopt;
  arg = std::clamp(arg, Scalar(-1), Scalar(1));
  const Scalar theta = acos(arg) / Scalar(3);
  const Scalar ct = cos(theta), st = sin(theta);
  const Scalar s3 = std::numbers::sqrt3_v<Scalar>;
  CubicRoots<Scalar> out{{(-b - Scalar(2) * sp * ct) / Scalar(3),
                          (-b + sp * (ct - s3 * st)) / Scalar(3),
                          (-b + sp * (ct + s3 * st)) / Scalar(3)},
                         theta};
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

}  // namespace qrabi
