#include "qrabi/observables.hpp"

#include <cmath>
#include <string>

#include "qrabi/errors.hpp"

namespace qrabi {

double photon_ground_variational(const Displacement& disp) { return 0.5 * disp.lambda * disp.lambda; }

double grwa_chi0(const ModelParams& params) {
  if (!(params.Omega > 0.0)) throw DomainError("grwa_chi0: requires Omega > 0");
  const double g2 = params.g * params.g;
  return std::sqrt(2.0) * g2 / (params.Omega * params.omega) *
         std::exp(g2 / (2.0 * params.omega * params.omega));
}

double photon_ground_grwa(const ModelParams& params) {
  const double chi0 = grwa_chi0(params);
  const double ratio = params.g / params.omega;
  return 0.5 * (1.0 + chi0 / std::sqrt(chi0 * chi0 + 8.0)) * ratio * ratio;
}

double photon_manifold0(const Block0& block0, int j, const Displacement& disp) {
  if (j < 0 || j > 1) throw DomainError("photon_manifold0: j must be 0 or 1");
  const double l = disp.lambda;
  const double c0 = block0.vectors(0, j);
  const double cm = block0.vectors(1, j);
  // Coefficients are real; the conjugate factor equals the first.
  const double amp = l / std::sqrt(2.0) * c0 - cm;
  const double amp_conj = l / std::sqrt(2.0) * c0 - cm;
  return 0.5 * l * l + amp * amp_conj;
}

double photon_manifold_n(const GrwaBlock& block, int j, const Displacement& disp) {
  if (j < 0 || j > 2) throw DomainError("photon_manifold_n: j must be 0, 1 or 2");
  const double l = disp.lambda;
  const double n = block.n;
  const double c1 = block.vectors(0, j);
  const double c0 = block.vectors(1, j);
  const double cm = block.vectors(2, j);
  return (n + 0.5 * l * l) + 0.5 * l * l * c0 * c0 - c1 * c1 + cm * cm -
         std::sqrt(n) * l / std::sqrt(2.0) * (c0 * c1 + c1 * c0) -
         std::sqrt(n + 1.0) * l / std::sqrt(2.0) * (cm * c0 + c0 * cm);
}

double photon_for_level(const ManifoldSolution& solution, const LevelTag& tag) {
  switch (tag.kind) {
    case LevelTag::Kind::Ground:
      return photon_ground_variational(solution.disp);
    case LevelTag::Kind::Block0:
      return photon_manifold0(solution.block0, tag.j, solution.disp);
    case LevelTag::Kind::Block:
      return photon_manifold_n(solution.block(tag.n), tag.j, solution.disp);
    case LevelTag::Kind::Adiabatic:
      break;
  }
  throw DomainError("photon_for_level: adiabatic levels carry no photon formula");
}

std::vector<int> match_levels_by_energy(const std::vector<double>& approx, const std::vector<double>& reference) {
  if (reference.empty()) throw DomainError("match_levels_by_energy: empty reference");
  std::vector<int> out;
  out.reserve(approx.size());
  for (double e : approx) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(reference.size()); ++i)
      if (std::abs(reference[i] - e) < std::abs(reference[best] - e)) best = i;
    out.push_back(best);
  }
  return out;
}

}  // namespace qrabi
