#pragma once

#include <vector>

#include "qrabi/model.hpp"
#include "qrabi/vgrwa.hpp"

namespace qrabi {

/// Ground-state <a^dag a> of the displaced trial state |-1_x, 0>: lambda^2 / 2.
double photon_ground_variational(const Displacement& disp);

/// chi_0 = sqrt2 g^2 / (Omega omega) e^{g^2 / (2 omega^2)} of the fixed-lambda GRWA ground state.
double grwa_chi0(const ModelParams& params);

/// Fixed-lambda GRWA ground-state photon number
///   (1 + chi_0 / sqrt(chi_0^2 + 8)) g^2 / (2 omega^2).
/// Throws DomainError at Omega = 0.
double photon_ground_grwa(const ModelParams& params);

/// <a^dag a> for eigenstate j of the n = 0 block:
///   lambda^2/2 + (lambda/sqrt2 c_{0,0} - c_{-1,0})^2.
double photon_manifold0(const Block0& block0, int j, const Displacement& disp);

/// <a^dag a> for eigenstate j of block n >= 1:
///   n + lambda^2/2 + (lambda^2/2) c_0^2 - c_1^2 + c_{-1}^2
///   - sqrt(2n) lambda c_0 c_1 - sqrt(2(n+1)) lambda c_{-1} c_0.
double photon_manifold_n(const GrwaBlock& block, int j, const Displacement& disp);

/// Photon number of the level carrying `tag` in a manifold solution.
double photon_for_level(const ManifoldSolution& solution, const LevelTag& tag);

/// For each approximate energy, the index of the nearest reference energy.
std::vector<int> match_levels_by_energy(const std::vector<double>& approx, const std::vector<double>& reference);

}  // namespace qrabi
