#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qrabi/time_series.hpp"
#include "qrabi/vgrwa.hpp"

namespace qrabi {

/// Coherent tail weight sum_{n > cutoff} |zeta_n|^2 tolerated by the dynamics.
inline constexpr double kCoherentTailWeight = 1e-12;
inline constexpr int kDynamicsGuardLevels = 10;
inline constexpr int kDefaultDynamicsCutoff = 60;

/// sum_{n > cutoff} |zeta_n^amplitude|^2, summed directly (no 1 - sum cancellation).
double coherent_tail(double amplitude, int cutoff);

/// zeta_n = e^{-amplitude^2/2} amplitude^n / sqrt(n!) for n = 0..cutoff, by the
/// running product zeta_{n+1} = zeta_n amplitude / sqrt(n+1). Throws
/// TruncationError if the weight beyond the cutoff is not below kCoherentTailWeight.
Eigen::VectorXd coherent_weights(double amplitude, int cutoff);

/// max(kDefaultDynamicsCutoff, smallest N with tail below kCoherentTailWeight + guard levels).
int dynamics_cutoff(double amplitude);

/// Expansion of U |-1_z, alpha> = |-1_z, alpha - lambda> over the manifold bases.
/// Per-block vectors are indexed by n = 1..cutoff (entry 0 unused).
struct InitialCoeffs {
  double amplitude = 0.0;  ///< alpha - lambda
  int cutoff = 0;
  double chi_ground = 0.0;  ///< on |-1_x, 0>
  double chi_00 = 0.0;      ///< on |0_x, 0>
  double chi_m10 = 0.0;     ///< on |-1_x, 1>
  Eigen::VectorXd chi_1;    ///< on |1_x, n-1>
  Eigen::VectorXd chi_0;    ///< on |0_x, n>
  Eigen::VectorXd chi_m1;   ///< on |-1_x, n+1>

  double total_weight() const;
};

InitialCoeffs initial_coeffs(const Displacement& disp, double alpha, int cutoff);

/// Overlaps of the initial state with the manifold eigenstates.
struct EigenOverlaps {
  double ground = 0.0;                  ///< D_0
  std::array<double, 2> block0{};       ///< D_0^j
  Eigen::Matrix<double, 3, Eigen::Dynamic> blocks;  ///< column n holds D_n^j (column 0 unused)

  double total_weight() const;
};

EigenOverlaps eigen_overlaps(const ManifoldSolution& solution, const InitialCoeffs& coeffs);

/// Evolved amplitudes on the |j_x, n> basis at one time; same layout as InitialCoeffs.
struct Amplitudes {
  using cplx = std::complex<double>;
  cplx ground;
  cplx b_00;
  cplx b_m10;
  Eigen::VectorXcd b_1;
  Eigen::VectorXcd b_0;
  Eigen::VectorXcd b_m1;

  double norm() const;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<Amplitudes> beta;
  InitialStateRecord initial;
};

Amplitudes amplitudes_at(const ManifoldSolution& solution, const EigenOverlaps& overlaps, double t);

/// beta(t) on the grid; requires solution.n_blocks() >= coeffs.cutoff.
Trajectory evolve(const ManifoldSolution& solution, const InitialCoeffs& coeffs, const TimeGrid& grid);

/// <J_z> from the amplitudes (J_z is invariant under the frame change).
double jz_value(const Amplitudes& beta);

/// Population of |-1_z> after tracing out the oscillator.
double p_minus1_value(const Amplitudes& beta);

std::vector<double> jz_series(const Trajectory& trajectory);
std::vector<double> population_series(const Trajectory& trajectory);

/// Full pipeline for one (params, lambda): cutoff from |alpha - lambda|, blocks, evolution, observables.
/// cutoff <= 0 selects dynamics_cutoff().
TimeSeries manifold_dynamics(const ModelParams& params, const Displacement& disp, double alpha,
                             const TimeGrid& grid, const std::string& method, int cutoff = 0);

}  // namespace qrabi
