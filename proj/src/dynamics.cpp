#include "qrabi/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qrabi/errors.hpp"

namespace qrabi {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

double coherent_tail(double amplitude, int cutoff) {
  if (cutoff < 0) throw DomainError("coherent_tail: cutoff must be >= 0");
  const double a2 = amplitude * amplitude;
  // Squared weight at cutoff + 1 in log space, then the ratio recurrence.
  if (amplitude == 0.0) return 0.0;
  const int n0 = cutoff + 1;
  double w = std::exp(-a2 + n0 * std::log(a2) - std::lgamma(n0 + 1.0));
  double tail = 0.0;
  for (int n = n0; n < n0 + 100000; ++n) {
    tail += w;
    w *= a2 / (n + 1);
    if (w == 0.0 || (n + 1 > a2 && w < 1e-30 * tail)) break;
  }
  return tail;
}

Eigen::VectorXd coherent_weights(double amplitude, int cutoff) {
  if (cutoff < 0) throw DomainError("coherent_weights: cutoff must be >= 0");
  const double tail = coherent_tail(amplitude, cutoff);
  if (!(tail < kCoherentTailWeight))
    throw TruncationError("coherent_weights: tail weight " + std::to_string(tail) + " at cutoff " +
                          std::to_string(cutoff) + " for amplitude " + std::to_string(amplitude));
  Eigen::VectorXd z(cutoff + 1);
  z(0) = std::exp(-0.5 * amplitude * amplitude);
  for (int n = 0; n < cutoff; ++n) z(n + 1) = z(n) * amplitude / std::sqrt(n + 1.0);
  return z;
}

int dynamics_cutoff(double amplitude) {
  int n = 0;
  while (!(coherent_tail(amplitude, n) < kCoherentTailWeight)) ++n;
  return std::max(kDefaultDynamicsCutoff, n + kDynamicsGuardLevels);
}

double InitialCoeffs::total_weight() const {
  return chi_ground * chi_ground + chi_00 * chi_00 + chi_m10 * chi_m10 + chi_1.squaredNorm() + chi_0.squaredNorm() +
         chi_m1.squaredNorm();
}

InitialCoeffs initial_coeffs(const Displacement& disp, double alpha, int cutoff) {
  if (cutoff < 1) throw DomainError("initial_coeffs: cutoff must be >= 1");
  InitialCoeffs c;
  c.amplitude = alpha - disp.lambda;
  c.cutoff = cutoff;
  // zeta up to cutoff + 1: chi_{-1,n} reaches |-1_x, cutoff + 1>.
  const Eigen::VectorXd zeta = coherent_weights(c.amplitude, cutoff + 1);
  c.chi_ground = 0.5 * zeta(0);
  c.chi_00 = -kInvSqrt2 * zeta(0);
  c.chi_m10 = 0.5 * zeta(1);
  c.chi_1 = Eigen::VectorXd::Zero(cutoff + 1);
  c.chi_0 = Eigen::VectorXd::Zero(cutoff + 1);
  c.chi_m1 = Eigen::VectorXd::Zero(cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) {
    c.chi_1(n) = 0.5 * zeta(n - 1);
    c.chi_0(n) = -kInvSqrt2 * zeta(n);
    c.chi_m1(n) = 0.5 * zeta(n + 1);
  }
  return c;
}

double EigenOverlaps::total_weight() const {
  return ground * ground + block0[0] * block0[0] + block0[1] * block0[1] + blocks.squaredNorm();
}

EigenOverlaps eigen_overlaps(const ManifoldSolution& solution, const InitialCoeffs& coeffs) {
  if (solution.n_blocks() < coeffs.cutoff)
    throw DomainError("eigen_overlaps: solution has " + std::to_string(solution.n_blocks()) +
                      " blocks, coefficients need " + std::to_string(coeffs.cutoff));
  EigenOverlaps d;
  d.ground = coeffs.chi_ground;
  for (int j = 0; j < 2; ++j)
    d.block0[j] = solution.block0.vectors(0, j) * coeffs.chi_00 + solution.block0.vectors(1, j) * coeffs.chi_m10;
  d.blocks = Eigen::Matrix<double, 3, Eigen::Dynamic>::Zero(3, coeffs.cutoff + 1);
  for (int n = 1; n <= coeffs.cutoff; ++n) {
    const Eigen::Vector3d chi(coeffs.chi_1(n), coeffs.chi_0(n), coeffs.chi_m1(n));
    d.blocks.col(n) = solution.block(n).vectors.transpose() * chi;
  }
  return d;
}

double Amplitudes::norm() const {
  return std::norm(ground) + std::norm(b_00) + std::norm(b_m10) + b_1.squaredNorm() + b_0.squaredNorm() +
         b_m1.squaredNorm();
}

Amplitudes amplitudes_at(const ManifoldSolution& solution, const EigenOverlaps& overlaps, double t) {
  using cplx = std::complex<double>;
  const auto phase = [t](double e) { return std::polar(1.0, -e * t); };
  const int cutoff = static_cast<int>(overlaps.blocks.cols()) - 1;
  Amplitudes b;
  b.ground = phase(solution.ground_energy) * overlaps.ground;
  b.b_00 = 0.0;
  b.b_m10 = 0.0;
  for (int j = 0; j < 2; ++j) {
    const cplx w = phase(solution.block0.energies[j]) * overlaps.block0[j];
    b.b_00 += w * solution.block0.vectors(0, j);
    b.b_m10 += w * solution.block0.vectors(1, j);
  }
  b.b_1 = Eigen::VectorXcd::Zero(cutoff + 1);
  b.b_0 = Eigen::VectorXcd::Zero(cutoff + 1);
  b.b_m1 = Eigen::VectorXcd::Zero(cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) {
    const GrwaBlock& blk = solution.block(n);
    for (int j = 0; j < 3; ++j) {
      const cplx w = phase(blk.energies[j]) * overlaps.blocks(j, n);
      b.b_1(n) += w * blk.vectors(0, j);
      b.b_0(n) += w * blk.vectors(1, j);
      b.b_m1(n) += w * blk.vectors(2, j);
    }
  }
  return b;
}

Trajectory evolve(const ManifoldSolution& solution, const InitialCoeffs& coeffs, const TimeGrid& grid) {
  const EigenOverlaps overlaps = eigen_overlaps(solution, coeffs);
  Trajectory traj;
  traj.t = grid.t;
  traj.initial = InitialStateRecord{coeffs.amplitude + solution.disp.lambda, solution.disp.lambda, coeffs.cutoff};
  traj.beta.reserve(grid.size());
  for (double t : grid.t) traj.beta.push_back(amplitudes_at(solution, overlaps, t));
  return traj;
}

namespace {

using cplx = std::complex<double>;

// x* y + y* x
double herm(cplx x, cplx y) { return 2.0 * (std::conj(x) * y).real(); }

struct AmplitudeView {
  const Amplitudes& b;
  int cutoff() const { return static_cast<int>(b.b_0.size()) - 1; }
  // beta_{1,n}; zero beyond the cutoff.
  cplx one(int n) const { return n >= 1 && n <= cutoff() ? b.b_1(n) : cplx{}; }
  cplx zero(int n) const { return n == 0 ? b.b_00 : (n <= cutoff() ? b.b_0(n) : cplx{}); }
  // beta_{-1,n}; n = 0 is the |-1_x, 1> amplitude of the n = 0 block.
  cplx minus(int n) const { return n == 0 ? b.b_m10 : (n <= cutoff() ? b.b_m1(n) : cplx{}); }
};

}  // namespace

double jz_value(const Amplitudes& beta) {
  const AmplitudeView v{beta};
  double w = kInvSqrt2 * herm(v.one(1), v.zero(0)) + kInvSqrt2 * herm(v.zero(0), beta.ground);
  for (int n = 1; n <= v.cutoff(); ++n)
    w += kInvSqrt2 * herm(v.one(n + 1), v.zero(n)) + kInvSqrt2 * herm(v.minus(n - 1), v.zero(n));
  return w;
}

double p_minus1_value(const Amplitudes& beta) {
  const AmplitudeView v{beta};
  const double q = 1.0 / (2.0 * std::sqrt(2.0));
  const cplx b11 = v.one(1), b00 = v.zero(0), b0 = beta.ground;
  double p = 0.25 * std::norm(b11) + 0.5 * std::norm(b00) + 0.25 * std::norm(b0) + 0.25 * herm(b11, b0) -
             q * (herm(b11, b00) + herm(b0, b00));
  for (int n = 1; n <= v.cutoff(); ++n) {
    const cplx up = v.one(n + 1), mid = v.zero(n), dn = v.minus(n - 1);
    p += 0.25 * std::norm(up) + 0.5 * std::norm(mid) + 0.25 * std::norm(dn);
    p -= q * (herm(up, mid) + herm(dn, mid));
    p += 0.25 * herm(up, dn);
  }
  return p;
}

std::vector<double> jz_series(const Trajectory& trajectory) {
  std::vector<double> out;
  out.reserve(trajectory.beta.size());
  for (const auto& b : trajectory.beta) out.push_back(jz_value(b));
  return out;
}

std::vector<double> population_series(const Trajectory& trajectory) {
  std::vector<double> out;
  out.reserve(trajectory.beta.size());
  for (const auto& b : trajectory.beta) out.push_back(p_minus1_value(b));
  return out;
}

TimeSeries manifold_dynamics(const ModelParams& params, const Displacement& disp, double alpha, const TimeGrid& grid,
                             const std::string& method, int cutoff) {
  if (!(alpha >= 0.0)) throw DomainError("manifold_dynamics: alpha must be >= 0");
  const int n = cutoff > 0 ? cutoff : dynamics_cutoff(alpha - disp.lambda);
  const ManifoldSolution solution = solve_manifolds(params, disp, n);
  const InitialCoeffs coeffs = initial_coeffs(disp, alpha, n);
  const EigenOverlaps overlaps = eigen_overlaps(solution, coeffs);

  TimeSeries out;
  out.method = method;
  out.t = grid.t;
  out.initial = InitialStateRecord{alpha, disp.lambda, n};
  out.jz.reserve(grid.size());
  out.p_minus1.reserve(grid.size());
  const double norm0 = overlaps.total_weight();
  for (double t : grid.t) {
    const Amplitudes b = amplitudes_at(solution, overlaps, t);
    out.jz.push_back(jz_value(b));
    out.p_minus1.push_back(p_minus1_value(b));
    out.norm_drift = std::max(out.norm_drift, std::abs(b.norm() - norm0));
  }
  return out;
}

}  // namespace qrabi
