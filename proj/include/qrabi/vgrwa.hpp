#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "qrabi/cubic.hpp"
#include "qrabi/model.hpp"
#include "qrabi/special_functions.hpp"

namespace qrabi {

/// How the displacement lambda of U = exp[lambda J_z (a^dag - a)] is chosen.
enum class LambdaStrategy {
  GrwaFixed,           ///< lambda = g/omega (conventional GRWA)
  ClosedForm,          ///< lambda = g/(omega + Omega)
  SelfConsistent,      ///< lambda = g/(omega + Omega e^{-lambda0^2/2}), lambda0 = g/(omega + Omega)
  ExactRoot,           ///< root of g - lambda omega - lambda Omega e^{-lambda^2/2} = 0
  AdiabaticOptimized,  ///< numeric minimum of the lowest adiabatic n = 0 level
};

std::string_view to_string(LambdaStrategy s);
std::optional<LambdaStrategy> parse_lambda_strategy(std::string_view name);

struct Displacement {
  double lambda = 0.0;
  double lambda_prime = 0.0;  ///< residual linear coupling g - lambda omega
  double eps_lambda = 0.0;    ///< displacement energy (lambda^2 omega - 2 g lambda) / 2
  LambdaStrategy strategy = LambdaStrategy::GrwaFixed;
};

Displacement make_displacement(const ModelParams& params, double lambda, LambdaStrategy strategy);

/// g - lambda omega - lambda Omega e^{-lambda^2/2}; zero at the stationary point of ground_energy.
double lambda_residual(const ModelParams& params, double lambda);

/// Selects lambda per strategy. ExactRoot bisects [0, g/omega] down to
/// adjacent doubles; when the residual is not monotone there the bracket is
/// scanned and the root with the lowest trial energy is kept.
Displacement solve_lambda(const ModelParams& params, LambdaStrategy strategy);

/// Trial ground-state energy E_G(lambda) = (lambda^2 omega - 2 g lambda)/2 - Omega e^{-lambda^2/2}.
double ground_energy(const ModelParams& params, double lambda);
double ground_energy(const ModelParams& params, const Displacement& disp);

/// Coefficient of the generalized counter-rotating term in manifold n:
/// g - lambda omega - Omega e^{-lambda^2/2} lambda L_n^1(lambda^2) / (n + 1).
double counter_rotating_coeff(const ModelParams& params, const Displacement& disp, int n);

/// Zeroth-order (adiabatic) block for Fock level n in the basis
/// (|-1_x, n>, |0_x, n>, |1_x, n>):
///   [[xi-, 0, eps], [0, xi0, 0], [eps, 0, xi+]].
/// The middle state decouples.
struct AdiabaticBlock {
  int n = 0;
  double xi_minus = 0.0;
  double xi_zero = 0.0;
  double xi_plus = 0.0;
  double eps_lambda = 0.0;
  double energy_minus = 0.0;
  double energy_zero = 0.0;
  double energy_plus = 0.0;
  Eigen::Vector3d vec_minus;
  Eigen::Vector3d vec_zero;
  Eigen::Vector3d vec_plus;

  Eigen::Matrix3d matrix() const;
  std::array<double, 3> sorted_energies() const;
};

AdiabaticBlock adiabatic_block(const ModelParams& params, const Displacement& disp, int n);

enum class SolvePath { Analytic, Numeric };

/// Excitation-conserving block n >= 1 in the basis
/// (|1_x, n-1>, |0_x, n>, |-1_x, n+1>):
///   [[nu-, z, 0], [z, nu0, y], [0, y, nu+]].
struct GrwaBlock {
  int n = 1;
  double nu_minus = 0.0;  ///< omega (n-1) + f0_{n-1} + eps_lambda
  double nu_zero = 0.0;   ///< omega n + 2 eps_lambda
  double nu_plus = 0.0;   ///< omega (n+1) - f0_{n+1} + eps_lambda
  double z = 0.0;         ///< sqrt(n/2) (f1_{n-1} + lambda')
  double y = 0.0;         ///< sqrt((n+1)/2) (f1_n + lambda')
  double b = 0.0, c = 0.0, d = 0.0;  ///< monic characteristic cubic
  double theta = 0.0;
  std::array<double, 3> energies{};  ///< ascending
  /// Column j holds (c_{1,n}, c_{0,n}, c_{-1,n}) for energies[j].
  Eigen::Matrix3d vectors = Eigen::Matrix3d::Zero();
  SolvePath path = SolvePath::Analytic;

  Eigen::Matrix3d matrix() const;
};

/// Trigonometric roots (ascending) of the block's characteristic cubic, evaluated on the
/// block shifted by nu0; nullopt for a (near-)triple root.
std::optional<CubicRoots<double>> grwa_block_roots(const GrwaBlock& block);

/// Unnormalised closed-form eigenvector (z (E - nu+), (E - nu+)(E - nu-), y (E - nu-)); its norm is eta.
Eigen::Vector3d grwa_block_raw_vector(const GrwaBlock& block, double energy);

/// Solves block n from the trigonometric cubic roots and the closed-form
/// coefficients c_{-1} = y (E - nu-)/eta, c_0 = (E - nu+)(E - nu-)/eta, c_1 = z (E - nu+)/eta.
/// Falls back to a numeric 3x3 eigensolver (path = Numeric) when the roots are
/// degenerate or a closed-form vector fails its residual check.
GrwaBlock grwa_block(const ModelParams& params, const Displacement& disp, int n);

/// Same, with F_0 and F_1 read from a prebuilt table covering n + 1.
GrwaBlock grwa_block(const ModelParams& params, const Displacement& disp, int n, const FTable& f);

/// Block for the n = 0 manifold in the basis (|0_x, 0>, |-1_x, 1>).
struct Block0 {
  double eps_00 = 0.0;    ///< 2 eps_lambda
  double eps_1m = 0.0;    ///< omega - f0_1 + eps_lambda
  double coupling = 0.0;  ///< R_{0,1} = sqrt(1/2) (f1_0 + lambda')
  std::array<double, 2> energies{};  ///< (E-, E+)
  /// Column j holds (c_{0,0}, c_{-1,0}) for energies[j].
  Eigen::Matrix2d vectors = Eigen::Matrix2d::Zero();

  Eigen::Matrix2d matrix() const;
};

Block0 grwa_block0(const ModelParams& params, const Displacement& disp);

/// Ground energy, the n = 0 block and blocks 1..n_blocks for one (params, lambda).
struct ManifoldSolution {
  ModelParams params;
  Displacement disp;
  double ground_energy = 0.0;
  Block0 block0;
  std::vector<GrwaBlock> blocks;  ///< blocks[i].n == i + 1

  const GrwaBlock& block(int n) const { return blocks.at(static_cast<std::size_t>(n - 1)); }
  int n_blocks() const { return static_cast<int>(blocks.size()); }
};

ManifoldSolution solve_manifolds(const ModelParams& params, const Displacement& disp, int n_blocks);

/// Where a level comes from: the ground state |-1_x, 0>, the n = 0 block, or block n.
struct LevelTag {
  enum class Kind { Ground, Block0, Block, Adiabatic };
  Kind kind = Kind::Ground;
  int n = 0;
  int j = 0;  ///< index into the block's ascending energies
};

struct Level {
  double energy = 0.0;
  LevelTag tag;
};

struct SpectrumTable {
  std::vector<Level> levels;  ///< ascending energy

  std::vector<double> energies(std::size_t k) const;
};

/// Sorted union of E_g, E_0^{+-} and E_n^j for 1 <= n <= n_blocks.
SpectrumTable assemble_spectrum(const ManifoldSolution& solution);
SpectrumTable assemble_spectrum(const ModelParams& params, const Displacement& disp, int n_blocks);

/// Sorted adiabatic levels of blocks 0..n_blocks (3 per block).
SpectrumTable adiabatic_spectrum(const ModelParams& params, const Displacement& disp, int n_blocks);

}  // namespace qrabi
