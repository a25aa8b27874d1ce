#pragma once

#include <vector>

#include <Eigen/Core>

#include "qrabi/model.hpp"
#include "qrabi/time_series.hpp"

namespace qrabi {

/// Ascending eigenvalues with orthonormal eigenvectors as columns.
struct EigenSystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Tolerated asymmetry max|A - A^T| relative to max(1, max|A|).
inline constexpr double kSymmetryTolerance = 1e-12;

/// Full spectrum of a real symmetric matrix.
///
/// Each eigenvector is signed so its largest-magnitude component is positive.
/// Throws DomainError for non-symmetric input, ConvergenceError if the QR
/// iteration does not converge.
EigenSystem eig_sym(const Eigen::MatrixXd& matrix);

/// Eigenvalues only; same checks as eig_sym.
Eigen::VectorXd eigvals_sym(const Eigen::MatrixXd& matrix);

inline constexpr int kDefaultStaticNmax = 200;

/// Diagonalized model Hamiltonian. Degenerate levels are rotated to diagonalize
/// a^dag a within the degenerate subspace and ordered by ascending <a^dag a>.
struct ExactSpectrum {
  EigenSystem system;
  Eigen::VectorXd photon;  ///< <v_k| a^dag a |v_k>
};

ExactSpectrum ed_solve(const ModelParams& params, const FockTruncation& trunc);

/// k lowest eigenvalues of the model Hamiltonian.
std::vector<double> ed_spectrum(const ModelParams& params, const FockTruncation& trunc, int k);

/// True iff doubling n_max moves each of the k lowest levels by less than tol.
bool ed_converged(const ModelParams& params, const FockTruncation& trunc, int k, double tol = 1e-8);

double ed_mean_photon(const ModelParams& params, const FockTruncation& trunc, int level);

/// Largest single coherent weight e^{-a^2/2} a^n / sqrt(n!) allowed at the cutoff.
inline constexpr double kCoherentTailTolerance = 1e-12;

/// e^{-alpha^2/2} alpha^n / sqrt(n!), evaluated in log space.
double coherent_weight(double alpha, int n);

/// max(200, smallest N whose coherent weight at alpha is below kCoherentTailTolerance).
int default_dynamics_truncation(double alpha);

/// J_z(t) and P_{-1}(t) for |-1_z> (x) |alpha> evolved under the model Hamiltonian,
/// by expansion in its eigenbasis. Throws TruncationError if the coherent weight
/// at n_max is not below kCoherentTailTolerance.
TimeSeries ed_dynamics(const ModelParams& params, const FockTruncation& trunc, double alpha, const TimeGrid& grid);

}  // namespace qrabi
