#pragma once

#include <Eigen/Core>

namespace qrabi {

/// Physical parameters of H = omega a^dag a + Omega J_x + g J_z (a^dag + a).
struct ModelParams {
  double omega = 1.0;  ///< oscillator frequency, the energy unit
  double Omega = 0.0;  ///< qubit transition frequency
  double g = 0.0;      ///< qubit-oscillator coupling

  /// Throws DomainError unless omega > 0, Omega >= 0, g >= 0.
  void validate() const;
};

/// Fock space cut at n_max; the product space has dimension 3 (n_max + 1).
struct FockTruncation {
  int n_max = 200;

  void validate() const;
  int fock_size() const { return n_max + 1; }
  int dimension() const { return 3 * (n_max + 1); }
};

// Spin index within the |j_x> triplet basis.
inline constexpr int kSpinPlus = 0;   // |1_x>
inline constexpr int kSpinZero = 1;   // |0_x>
inline constexpr int kSpinMinus = 2;  // |-1_x>

/// Fock-major product index: |j_x, n> -> 3n + s.
constexpr int basis_index(int n, int spin) { return 3 * n + spin; }

/// Spin-1 operators in the J_x eigenbasis (|1_x>, |0_x>, |-1_x>).
///
/// Phases are fixed so that J_z and i J_y are real; every Hamiltonian below is
/// then real symmetric. The ladder operators raise/lower J_x:
/// jplus = J_z - i J_y, jminus = J_z + i J_y = jplus^T.
struct SpinTriplet {
  Eigen::Matrix3d jx;
  Eigen::Matrix3cd jy;
  Eigen::Matrix3d jz;
  Eigen::Matrix3d i_jy;  ///< i J_y, real antisymmetric
  Eigen::Matrix3d jplus;
  Eigen::Matrix3d jminus;
  Eigen::Vector3d minus_z;  ///< |-1_z> = 1/2 |1_x> - 1/sqrt2 |0_x> + 1/2 |-1_x>
};

const SpinTriplet& spin_triplet();

Eigen::MatrixXd annihilation_operator(int n_max);

/// kron(fock, spin) in the Fock-major ordering.
Eigen::MatrixXd fock_spin_product(const Eigen::MatrixXd& fock, const Eigen::Matrix3d& spin);

/// a^dag a on the product space.
Eigen::MatrixXd number_operator(const FockTruncation& trunc);

Eigen::MatrixXd build_hamiltonian(const ModelParams& params, const FockTruncation& trunc);

/// cosh and sinh of lambda (a^dag - a) on a truncated Fock space.
///
/// Both are real: a^dag - a = S (-i T) S^dag with S = diag(i^n) and T = a + a^dag,
/// so they follow from the real eigendecomposition of T.
struct HyperbolicDisplacement {
  Eigen::MatrixXd cosh;
  Eigen::MatrixXd sinh;
};

HyperbolicDisplacement hyperbolic_displacement(double lambda, int n_max);

/// U H U^dag with U = exp[lambda J_z (a^dag - a)], assembled term by term:
/// omega a^dag a + (lambda^2 omega - 2 g lambda) J_z^2 + (g - lambda omega) J_z (a^dag + a)
///   + Omega J_x cosh[lambda (a^dag - a)] + Omega i J_y sinh[lambda (a^dag - a)].
/// Used as an oracle; truncation artifacts sit at the top Fock levels.
Eigen::MatrixXd build_transformed_hamiltonian(const ModelParams& params, double lambda, const FockTruncation& trunc);

/// Excitation-conserving GRWA Hamiltonian built from operator products:
/// omega a^dag a + Omega J_x F_0(a^dag a) + (eps_lambda/2)(J_+ J_- + J_- J_+)
///   + 1/2 [J_+ (g - lambda omega + Omega F_1(a^dag a)) a + h.c.].
/// Blocks of this matrix are what grwa_block() solves in closed form.
Eigen::MatrixXd build_grwa_hamiltonian(const ModelParams& params, double lambda, const FockTruncation& trunc);

}  // namespace qrabi
